#include "sensilab/measures/junta.hpp"

#include <bit>
#include <functional>
#include <string>

#include "sensilab/core/errors.hpp"
#include "sensilab/measures/degree.hpp"

namespace sensilab::measures {
namespace {

struct Term {
  std::uint64_t index;
  Cube cube;
  int size;
};

std::vector<Term> terms_up_to(int n, int max_size) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<Term> out;
  for (std::uint64_t t = 0; t < total; ++t) {
    Cube c;
    std::uint64_t rest = t;
    for (int i = 0; i < n; ++i, rest /= 3) {
      const auto d = rest % 3;
      if (d == 2) continue;
      c.fixed |= 1u << i;
      if (d == 1) c.values |= 1u << i;
    }
    if (c.size() <= max_size) out.push_back(Term{t, c, c.size()});
  }
  return out;
}

void validate_epsilon(const Rational& eps, const Rational& limit, const char* what) {
  if (sgn(eps) < 0 || eps >= limit)
    throw InputError(std::string(what) + ": epsilon " + eps.get_str() + " outside [0, " + limit.get_str() + ")");
}

ConicalJunta junta_from(const std::vector<Term>& terms, const std::vector<Rational>& w, int n, const Rational& eps) {
  ConicalJunta j;
  j.arity = n;
  j.epsilon = eps;
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (sgn(w[k]) > 0) j.terms.emplace_back(PartialAssignment::from_cube(terms[k].cube, n), w[k]);
  return j;
}

/// Adds the epsilon-approximation rows for values sum_k a_k(x) w_k.
void add_approx_rows(lp::LinearProgram& p, const BooleanFunction& f, const Rational& eps,
                     const std::function<std::vector<Rational>(std::uint64_t)>& row_of) {
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    auto row = row_of(x);
    if (f(x)) {
      if (sgn(eps) == 0) {
        p.add_row(std::move(row), lp::RowSense::eq, 1);
      } else {
        p.add_row(row, lp::RowSense::le, 1);
        p.add_row(std::move(row), lp::RowSense::ge, 1 - eps);
      }
    } else {
      p.add_row(std::move(row), lp::RowSense::le, eps);
    }
  }
}

JuntaDegreeResult one_side(const BooleanFunction& f, JuntaVariant variant, const Rational& eps, int side) {
  const int n = f.arity();
  JuntaDegreeResult r;
  r.side = side;
  if (variant == JuntaVariant::average) {
    const auto terms = terms_up_to(n, n);
    const auto p = junta_program(f, eps, n, true);
    const auto sol = lp::solve(p);
    if (sol.status != lp::Status::optimal) throw InvariantError("average-degree program not optimal");
    r.value = sol.value;
    r.junta = junta_from(terms, sol.primal, n, eps);
    return r;
  }
  for (int d = 0; d <= n; ++d) {
    const auto terms = terms_up_to(n, d);
    const auto feas = lp::check_feasible(junta_program(f, eps, d, false));
    if (!feas.feasible) continue;
    r.value = d;
    r.junta = junta_from(terms, feas.point, n, eps);
    return r;
  }
  throw InvariantError("full-degree conical junta program infeasible");
}

}  // namespace

Rational ConicalJunta::evaluate(std::uint64_t x) const {
  Rational v;
  for (const auto& [p, w] : terms)
    if (p.contains_bits(x)) v += w;
  return v;
}

int ConicalJunta::degree() const {
  int d = 0;
  for (const auto& [p, w] : terms) d = std::max(d, p.size());
  return d;
}

Rational ConicalJunta::average_degree() const {
  Rational best;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << arity); ++x) {
    Rational v;
    for (const auto& [p, w] : terms)
      if (p.contains_bits(x)) v += w * p.size();
    if (v > best) best = v;
  }
  return best;
}

bool ConicalJunta::approximates(const BooleanFunction& f) const {
  if (f.arity() != arity) return false;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const Rational q = evaluate(x);
    if (f(x) ? (q < 1 - epsilon || q > 1) : (sgn(q) < 0 || q > epsilon)) return false;
  }
  return true;
}

PartialAssignment term_of_index(std::uint64_t index, int arity) {
  PartialAssignment p(arity);
  for (int i = 0; i < arity; ++i, index /= 3)
    if (index % 3 != 2) p.set(i, static_cast<int>(index % 3));
  return p;
}

lp::LinearProgram junta_program(const BooleanFunction& f, const Rational& epsilon, int max_size, bool average) {
  const int n = f.arity();
  const auto terms = terms_up_to(n, max_size);
  const int vars = static_cast<int>(terms.size()) + (average ? 1 : 0);
  lp::LinearProgram p(lp::Objective::minimize, vars);
  if (average) p.costs.back() = 1;
  add_approx_rows(p, f, epsilon, [&](std::uint64_t x) {
    std::vector<Rational> row(static_cast<std::size_t>(vars));
    for (std::size_t k = 0; k < terms.size(); ++k)
      if (terms[k].cube.contains(x)) row[k] = 1;
    return row;
  });
  if (average) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      std::vector<Rational> row(static_cast<std::size_t>(vars));
      for (std::size_t k = 0; k < terms.size(); ++k)
        if (terms[k].cube.contains(x)) row[k] = terms[k].size;
      row.back() = -1;
      p.add_row(std::move(row), lp::RowSense::le, 0);
    }
  }
  return p;
}

JuntaDegreeResult conical_junta_degree(const BooleanFunction& f, JuntaVariant variant, int side,
                                       const Rational& epsilon, const Budget& budget) {
  validate_epsilon(epsilon, Rational(1, 4), "conical junta degree");
  if (f.arity() > budget.junta_arity)
    throw SizeError("conical junta degree: arity " + std::to_string(f.arity()) + " exceeds the limit of " +
                    std::to_string(budget.junta_arity));
  if (side == 1) return one_side(f, variant, epsilon, 1);
  if (side == 0) return one_side(f.negated(), variant, epsilon, 0);
  if (side != kMinSide) throw InputError("side must be 0, 1 or min");
  auto one = one_side(f, variant, epsilon, 1);
  auto zero = one_side(f.negated(), variant, epsilon, 0);
  return zero.value < one.value ? zero : one;
}

ApproxDegreeResult approx_degree(const BooleanFunction& f, const Rational& epsilon, const Budget& budget) {
  validate_epsilon(epsilon, Rational(1, 2), "approximate degree");
  const int n = f.arity();
  if (n > budget.junta_arity + 1)
    throw SizeError("approximate degree: arity " + std::to_string(n) + " exceeds the limit of " +
                    std::to_string(budget.junta_arity + 1));
  for (int d = 0; d <= n; ++d) {
    std::vector<std::uint64_t> subsets;
    for (std::uint64_t s = 0; s < f.size(); ++s)
      if (std::popcount(s) <= d) subsets.push_back(s);
    lp::LinearProgram p(lp::Objective::minimize, static_cast<int>(subsets.size()));
    for (int j = 0; j < p.num_vars(); ++j) p.set_free(j);
    add_approx_rows(p, f, epsilon, [&](std::uint64_t x) {
      std::vector<Rational> row(subsets.size());
      for (std::size_t k = 0; k < subsets.size(); ++k)
        if ((subsets[k] & x) == subsets[k]) row[k] = 1;
      return row;
    });
    const auto feas = lp::check_feasible(p);
    if (!feas.feasible) continue;
    ApproxDegreeResult r;
    r.degree = d;
    r.coeffs.assign(f.size(), Rational(0));
    for (std::size_t k = 0; k < subsets.size(); ++k) r.coeffs[subsets[k]] = feas.point[k];
    return r;
  }
  throw InvariantError("full-degree approximation program infeasible");
}

}  // namespace sensilab::measures
