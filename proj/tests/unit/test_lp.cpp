#include <doctest.h>

#include <random>

#include "sensilab/core/errors.hpp"
#include "sensilab/ratlp/lp.hpp"

using namespace sensilab;
using lp::LinearProgram;
using lp::Objective;
using lp::RowSense;
using lp::Status;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Best vertex of a 2-variable program with x, y >= 0 by enumerating all
// pairwise intersections of constraint and bound lines.
std::optional<Rational> vertex_oracle(const LinearProgram& p) {
  struct Line { Rational a, b, c; };
  std::vector<Line> lines;
  for (const auto& r : p.rows) lines.push_back({r.coeffs[0], r.coeffs[1], r.rhs});
  lines.push_back({1, 0, 0});
  lines.push_back({0, 1, 0});
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Rational det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
      if (det == 0) continue;
      const Rational x = (lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det;
      const Rational y = (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det;
      if (!lp::is_primal_feasible(p, {x, y})) continue;
      const Rational v = p.costs[0] * x + p.costs[1] * y;
      if (!best || (p.objective == Objective::maximize ? v > *best : v < *best)) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("7/2") == q(7, 2));
  CHECK(parse_rational("-1/8") == q(-1, 8));
  CHECK(parse_rational("4/6") == q(2, 3));
  CHECK(to_string(q(6, 4)) == "3/2");
  CHECK(ceil(q(7, 2)) == 4);
  CHECK(ceil(q(-7, 2)) == -3);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("textbook maximization") {
  LinearProgram p(Objective::maximize, 2);
  p.costs = {3, 5};
  p.add_row({1, 0}, RowSense::le, 4);
  p.add_row({0, 2}, RowSense::le, 12);
  p.add_row({3, 2}, RowSense::le, 18);
  const auto s = lp::solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.value == 36);
  CHECK(s.primal == std::vector<Rational>{2, 6});
  CHECK(lp::certify_optimal(p, s));
}

TEST_CASE("fractional optimum, equality rows and minimization") {
  LinearProgram p(Objective::minimize, 3);
  p.costs = {1, 1, 1};
  p.add_row({1, 1, 0}, RowSense::ge, 1);
  p.add_row({0, 1, 1}, RowSense::ge, 1);
  p.add_row({1, 0, 1}, RowSense::ge, 1);
  const auto s = lp::solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.value == q(3, 2));
  CHECK(lp::certify_optimal(p, s));

  LinearProgram e(Objective::maximize, 2);
  e.costs = {1, 2};
  e.add_row({1, 1}, RowSense::eq, 3);
  e.add_row({1, -1}, RowSense::le, 1);
  const auto t = lp::solve(e);
  REQUIRE(t.status == Status::optimal);
  CHECK(t.value == 6);
}

TEST_CASE("infeasible programs carry a Farkas certificate") {
  LinearProgram p(Objective::maximize, 2);
  p.costs = {1, 1};
  p.add_row({1, 1}, RowSense::le, 1);
  p.add_row({1, 1}, RowSense::ge, 2);
  const auto s = lp::solve(p);
  REQUIRE(s.status == Status::infeasible);
  CHECK(lp::certify_infeasible(p, s.farkas));
  std::vector<Rational> wrong(s.farkas.size(), 0);
  CHECK(!lp::certify_infeasible(p, wrong));
}

TEST_CASE("unbounded and free variables") {
  LinearProgram p(Objective::maximize, 2);
  p.costs = {1, 0};
  p.add_row({1, -1}, RowSense::le, 1);
  CHECK(lp::solve(p).status == Status::unbounded);

  LinearProgram f(Objective::minimize, 1);
  f.costs = {1};
  f.set_free(0);
  f.add_row({1}, RowSense::ge, -5);
  const auto s = lp::solve(f);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.value == -5);
  CHECK(lp::certify_optimal(f, s));

  LinearProgram l(Objective::minimize, 1);
  l.costs = {2};
  l.set_lower(0, q(3, 2));
  const auto t = lp::solve(l);
  REQUIRE(t.status == Status::optimal);
  CHECK(t.value == 3);
}

TEST_CASE("degenerate program does not cycle") {
  LinearProgram p(Objective::maximize, 4);
  p.costs = {q(3, 4), -150, q(1, 50), -6};
  p.add_row({q(1, 4), -60, q(-1, 25), 9}, RowSense::le, 0);
  p.add_row({q(1, 2), -90, q(-1, 50), 3}, RowSense::le, 0);
  p.add_row({0, 0, 1, 0}, RowSense::le, 1);
  const auto s = lp::solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.value == q(1, 20));
  CHECK(lp::certify_optimal(p, s));
}

TEST_CASE("random two-variable programs match vertex enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-5, 9);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearProgram p(trial % 2 ? Objective::maximize : Objective::minimize, 2);
    p.costs = {coef(rng), coef(rng)};
    const int m = 2 + trial % 3;
    for (int r = 0; r < m; ++r) p.add_row({coef(rng), coef(rng)}, RowSense::le, coef(rng) + 5);
    p.add_row({1, 1}, RowSense::le, 20);
    const auto s = lp::solve(p);
    const auto oracle = vertex_oracle(p);
    if (s.status == Status::optimal) {
      ++optimal;
      REQUIRE(oracle);
      CHECK(s.value == *oracle);
      CHECK(lp::certify_optimal(p, s));
    } else {
      CHECK(s.status == Status::infeasible);
      CHECK(!oracle);
      CHECK(lp::certify_infeasible(p, s.farkas));
    }
  }
  CHECK(optimal > 100);
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram p(Objective::maximize, 2);
  p.rows.push_back({{1}, RowSense::le, 1});
  CHECK_THROWS_AS(lp::solve(p), InputError);
}
