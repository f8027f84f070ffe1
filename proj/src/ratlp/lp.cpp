#include "sensilab/ratlp/lp.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab::lp {
namespace {

enum class ColumnKind { structural, slack, artificial };

/// Standard form max c.z, A z = b >= 0, z >= 0 derived from a LinearProgram.
struct StandardForm {
  int m = 0;
  int columns = 0;
  std::vector<std::vector<Rational>> tableau;  // m rows of columns + 1 entries (last = rhs)
  std::vector<ColumnKind> kind;
  std::vector<int> basis;
  std::vector<int> initial_column;  // column whose initial tableau column is e_r
  std::vector<Rational> row_sign;
  // user variable j -> (column, negative column or -1)
  std::vector<std::pair<int, int>> var_columns;
  std::vector<Rational> shift;
};

StandardForm standardize(const LinearProgram& p) {
  StandardForm s;
  s.m = p.num_rows();
  const int n = p.num_vars();
  int col = 0;
  s.shift.assign(static_cast<std::size_t>(n), Rational(0));
  for (int j = 0; j < n; ++j) {
    if (p.lower[j]) {
      s.var_columns.emplace_back(col++, -1);
      s.shift[j] = *p.lower[j];
    } else {
      s.var_columns.emplace_back(col, col + 1);
      col += 2;
    }
    s.kind.resize(static_cast<std::size_t>(col), ColumnKind::structural);
  }
  // Row data after shifting and sign normalization.
  std::vector<RowSense> sense(static_cast<std::size_t>(s.m));
  std::vector<Rational> rhs(static_cast<std::size_t>(s.m));
  s.row_sign.assign(static_cast<std::size_t>(s.m), Rational(1));
  for (int r = 0; r < s.m; ++r) {
    const auto& row = p.rows[r];
    Rational b = row.rhs;
    for (int j = 0; j < n; ++j)
      if (p.lower[j] && sgn(row.coeffs[j]) != 0) b -= row.coeffs[j] * *p.lower[j];
    sense[r] = row.sense;
    if (sgn(b) < 0) {
      s.row_sign[r] = -1;
      b = -b;
      if (row.sense == RowSense::le) sense[r] = RowSense::ge;
      else if (row.sense == RowSense::ge) sense[r] = RowSense::le;
    }
    rhs[r] = b;
  }
  // Slack/surplus columns, then artificials.
  std::vector<int> slack(static_cast<std::size_t>(s.m), -1), art(static_cast<std::size_t>(s.m), -1);
  for (int r = 0; r < s.m; ++r)
    if (sense[r] != RowSense::eq) {
      slack[r] = col++;
      s.kind.push_back(ColumnKind::slack);
    }
  for (int r = 0; r < s.m; ++r)
    if (sense[r] != RowSense::le) {
      art[r] = col++;
      s.kind.push_back(ColumnKind::artificial);
    }
  s.columns = col;
  s.tableau.assign(static_cast<std::size_t>(s.m), std::vector<Rational>(static_cast<std::size_t>(col + 1)));
  s.basis.assign(static_cast<std::size_t>(s.m), -1);
  s.initial_column.assign(static_cast<std::size_t>(s.m), -1);
  for (int r = 0; r < s.m; ++r) {
    auto& t = s.tableau[r];
    const auto& row = p.rows[r];
    for (int j = 0; j < n; ++j) {
      if (sgn(row.coeffs[j]) == 0) continue;
      const Rational a = row.coeffs[j] * s.row_sign[r];
      t[s.var_columns[j].first] = a;
      if (s.var_columns[j].second >= 0) t[s.var_columns[j].second] = -a;
    }
    if (slack[r] >= 0) t[slack[r]] = sense[r] == RowSense::le ? 1 : -1;
    if (art[r] >= 0) t[art[r]] = 1;
    t[col] = rhs[r];
    s.basis[r] = sense[r] == RowSense::le ? slack[r] : art[r];
    s.initial_column[r] = s.basis[r];
  }
  return s;
}

/// Simplex state over a StandardForm with an objective row z_j = c_B B^-1 A_j - c_j.
class Tableau {
 public:
  explicit Tableau(StandardForm& s) : s_(s) {}

  void set_costs(std::vector<Rational> costs, const std::vector<bool>& barred) {
    cost_ = std::move(costs);
    barred_ = barred;
    z_.assign(static_cast<std::size_t>(s_.columns + 1), Rational(0));
    for (int j = 0; j <= s_.columns; ++j) {
      Rational v = j < s_.columns ? -cost_[j] : Rational(0);
      for (int r = 0; r < s_.m; ++r) {
        const auto& c = cost_[s_.basis[r]];
        if (sgn(c) != 0 && sgn(s_.tableau[r][j]) != 0) v += c * s_.tableau[r][j];
      }
      z_[j] = v;
    }
  }

  /// Returns false when unbounded.
  bool optimize(int& pivots) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < s_.columns; ++j)
        if (!barred_[j] && sgn(z_[j]) < 0) { enter = j; break; }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < s_.m; ++r) {
        const auto& a = s_.tableau[r][enter];
        if (sgn(a) <= 0) continue;
        Rational ratio = s_.tableau[r][s_.columns] / a;
        if (leave < 0 || ratio < best || (ratio == best && s_.basis[r] < s_.basis[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(int r, int e) {
    auto& prow = s_.tableau[r];
    const Rational inv = 1 / prow[e];
    for (auto& v : prow)
      if (sgn(v) != 0) v *= inv;
    for (int i = 0; i < s_.m; ++i) {
      if (i == r) continue;
      auto& row = s_.tableau[i];
      if (sgn(row[e]) == 0) continue;
      const Rational f = row[e];
      for (int j = 0; j <= s_.columns; ++j)
        if (sgn(prow[j]) != 0) row[j] -= f * prow[j];
    }
    if (sgn(z_[e]) != 0) {
      const Rational f = z_[e];
      for (int j = 0; j <= s_.columns; ++j)
        if (sgn(prow[j]) != 0) z_[j] -= f * prow[j];
    }
    s_.basis[r] = e;
  }

  const Rational& objective() const { return z_[s_.columns]; }
  /// Row multipliers y with z_j = y.A_j - c_j, read off the initial identity columns.
  std::vector<Rational> duals() const {
    std::vector<Rational> y(static_cast<std::size_t>(s_.m));
    for (int r = 0; r < s_.m; ++r) {
      const int j = s_.initial_column[r];
      y[r] = z_[j] + cost_[j];
    }
    return y;
  }
  const std::vector<Rational>& z() const { return z_; }

 private:
  StandardForm& s_;
  std::vector<Rational> cost_;
  std::vector<bool> barred_;
  std::vector<Rational> z_;
};

std::vector<Rational> user_primal(const StandardForm& s) {
  std::vector<Rational> zcol(static_cast<std::size_t>(s.columns));
  for (int r = 0; r < s.m; ++r) zcol[s.basis[r]] = s.tableau[r][s.columns];
  std::vector<Rational> x(s.var_columns.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto [pos, neg] = s.var_columns[j];
    x[j] = zcol[pos] + s.shift[j];
    if (neg >= 0) x[j] -= zcol[neg];
  }
  return x;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational r;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) r += a[i] * b[i];
  return r;
}

/// A^T y.
std::vector<Rational> transpose_times(const LinearProgram& p, const std::vector<Rational>& y) {
  std::vector<Rational> a(static_cast<std::size_t>(p.num_vars()));
  for (int r = 0; r < p.num_rows(); ++r) {
    if (sgn(y[r]) == 0) continue;
    for (int j = 0; j < p.num_vars(); ++j)
      if (sgn(p.rows[r].coeffs[j]) != 0) a[j] += p.rows[r].coeffs[j] * y[r];
  }
  return a;
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(Objective obj, int num_vars)
    : objective(obj),
      costs(static_cast<std::size_t>(num_vars)),
      lower(static_cast<std::size_t>(num_vars), Rational(0)) {
  if (num_vars < 0) throw InputError("negative variable count");
}

int LinearProgram::add_row(std::vector<Rational> coeffs, RowSense sense, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars())
    throw InputError("row has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                     std::to_string(num_vars()));
  rows.push_back(Row{std::move(coeffs), sense, std::move(rhs)});
  return num_rows() - 1;
}

void LinearProgram::set_free(int var) { lower.at(static_cast<std::size_t>(var)) = std::nullopt; }

void LinearProgram::set_lower(int var, Rational bound) {
  lower.at(static_cast<std::size_t>(var)) = std::move(bound);
}

std::optional<Rational> LinearProgram::lower_bound(int var) const {
  return lower.at(static_cast<std::size_t>(var));
}

void LinearProgram::validate() const {
  if (lower.size() != costs.size()) throw InputError("bound vector does not match the variable count");
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].coeffs.size() != costs.size())
      throw InputError("row " + std::to_string(r) + " has " + std::to_string(rows[r].coeffs.size()) +
                       " coefficients, expected " + std::to_string(costs.size()));
}

Solution solve(const LinearProgram& program) {
  program.validate();
  StandardForm s = standardize(program);
  Tableau t(s);
  Solution sol;

  // Phase 1: maximize minus the sum of artificials.
  std::vector<bool> none(static_cast<std::size_t>(s.columns), false);
  std::vector<Rational> phase1(static_cast<std::size_t>(s.columns));
  bool any_artificial = false;
  for (int j = 0; j < s.columns; ++j)
    if (s.kind[j] == ColumnKind::artificial) {
      phase1[j] = -1;
      any_artificial = true;
    }
  if (any_artificial) {
    t.set_costs(phase1, none);
    t.optimize(sol.pivots);
    if (sgn(t.objective()) < 0) {
      sol.status = Status::infeasible;
      auto y = t.duals();
      for (int r = 0; r < s.m; ++r) y[r] *= s.row_sign[r];
      sol.farkas = std::move(y);
      std::string why;
      if (!certify_infeasible(program, sol.farkas, &why))
        throw InvariantError("simplex produced an invalid infeasibility certificate: " + why);
      return sol;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (int r = 0; r < s.m; ++r) {
      if (s.kind[s.basis[r]] != ColumnKind::artificial) continue;
      for (int j = 0; j < s.columns; ++j)
        if (s.kind[j] != ColumnKind::artificial && sgn(s.tableau[r][j]) != 0) {
          t.pivot(r, j);
          ++sol.pivots;
          break;
        }
    }
  }

  // Phase 2.
  const Rational direction = program.objective == Objective::maximize ? 1 : -1;
  std::vector<Rational> cost(static_cast<std::size_t>(s.columns));
  std::vector<bool> barred(static_cast<std::size_t>(s.columns), false);
  for (int j = 0; j < s.columns; ++j) barred[j] = s.kind[j] == ColumnKind::artificial;
  for (int j = 0; j < program.num_vars(); ++j) {
    const auto [pos, neg] = s.var_columns[j];
    cost[pos] = program.costs[j] * direction;
    if (neg >= 0) cost[neg] = -cost[pos];
  }
  t.set_costs(cost, barred);
  if (!t.optimize(sol.pivots)) {
    sol.status = Status::unbounded;
    sol.primal = user_primal(s);
    return sol;
  }
  sol.status = Status::optimal;
  sol.primal = user_primal(s);
  sol.value = dot(program.costs, sol.primal);
  auto y = t.duals();
  for (int r = 0; r < s.m; ++r) y[r] *= s.row_sign[r] * direction;
  sol.dual = std::move(y);
  std::string why;
  if (!certify_optimal(program, sol, &why))
    throw InvariantError("simplex optimum failed certification: " + why);
  return sol;
}

FeasibilityResult check_feasible(const LinearProgram& program) {
  LinearProgram p = program;
  p.objective = Objective::maximize;
  for (auto& c : p.costs) c = 0;
  const Solution s = solve(p);
  FeasibilityResult r;
  r.feasible = s.status == Status::optimal;
  if (r.feasible) r.point = s.primal;
  else r.farkas = s.farkas;
  return r;
}

bool is_primal_feasible(const LinearProgram& p, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != p.num_vars()) return false;
  for (int j = 0; j < p.num_vars(); ++j)
    if (p.lower[j] && x[j] < *p.lower[j]) return false;
  for (const auto& row : p.rows) {
    const Rational lhs = dot(row.coeffs, x);
    if (row.sense == RowSense::le && lhs > row.rhs) return false;
    if (row.sense == RowSense::ge && lhs < row.rhs) return false;
    if (row.sense == RowSense::eq && lhs != row.rhs) return false;
  }
  return true;
}

bool certify_optimal(const LinearProgram& p, const Solution& sol, std::string* why) {
  if (sol.status != Status::optimal) return fail(why, "status is not optimal");
  if (!is_primal_feasible(p, sol.primal)) return fail(why, "primal point infeasible");
  if (static_cast<int>(sol.dual.size()) != p.num_rows()) return fail(why, "dual has wrong length");
  const bool maximize = p.objective == Objective::maximize;
  for (int r = 0; r < p.num_rows(); ++r) {
    const int sy = sgn(sol.dual[r]);
    const auto sense = p.rows[r].sense;
    const bool ok = sense == RowSense::eq ||
                    (sense == RowSense::le && (maximize ? sy >= 0 : sy <= 0)) ||
                    (sense == RowSense::ge && (maximize ? sy <= 0 : sy >= 0));
    if (!ok) return fail(why, "dual sign violated on row " + std::to_string(r));
  }
  const auto aty = transpose_times(p, sol.dual);
  Rational dual_value = dot(sol.dual, [&] {
    std::vector<Rational> b;
    for (const auto& row : p.rows) b.push_back(row.rhs);
    return b;
  }());
  for (int j = 0; j < p.num_vars(); ++j) {
    const Rational d = p.costs[j] - aty[j];
    if (!p.lower[j]) {
      if (sgn(d) != 0) return fail(why, "reduced cost of free variable " + std::to_string(j) + " is non-zero");
      continue;
    }
    if (maximize ? sgn(d) > 0 : sgn(d) < 0)
      return fail(why, "reduced cost sign violated on variable " + std::to_string(j));
    dual_value += *p.lower[j] * d;
  }
  const Rational primal_value = dot(p.costs, sol.primal);
  if (primal_value != sol.value) return fail(why, "reported value differs from c.x");
  if (primal_value != dual_value)
    return fail(why, "duality gap: primal " + primal_value.get_str() + " vs dual " + dual_value.get_str());
  return true;
}

bool certify_infeasible(const LinearProgram& p, const std::vector<Rational>& y, std::string* why) {
  if (static_cast<int>(y.size()) != p.num_rows()) return fail(why, "certificate has wrong length");
  // Rows read as y_r (A_r x) <= y_r b_r for every feasible x.
  for (int r = 0; r < p.num_rows(); ++r) {
    const int sy = sgn(y[r]);
    if (p.rows[r].sense == RowSense::le && sy < 0) return fail(why, "sign violated on <= row " + std::to_string(r));
    if (p.rows[r].sense == RowSense::ge && sy > 0) return fail(why, "sign violated on >= row " + std::to_string(r));
  }
  const auto a = transpose_times(p, y);
  Rational lower_value;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (!p.lower[j]) {
      if (sgn(a[j]) != 0) return fail(why, "free variable " + std::to_string(j) + " has non-zero multiplier");
      continue;
    }
    if (sgn(a[j]) < 0) return fail(why, "bounded variable " + std::to_string(j) + " has negative multiplier");
    lower_value += a[j] * *p.lower[j];
  }
  Rational yb;
  for (int r = 0; r < p.num_rows(); ++r) yb += y[r] * p.rows[r].rhs;
  if (!(lower_value > yb)) return fail(why, "certificate does not separate");
  return true;
}

}  // namespace sensilab::lp
