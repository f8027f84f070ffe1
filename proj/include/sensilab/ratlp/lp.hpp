#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sensilab/ratlp/rational.hpp"

namespace sensilab::lp {

enum class Objective { maximize, minimize };
enum class RowSense { le, eq, ge };
enum class Status { optimal, infeasible, unbounded };

const char* to_string(Status s);

/// Exact-rational linear program over dense rows.
///
/// Variables default to a lower bound of 0. A variable may instead carry a
/// different finite lower bound or be free (nullopt).
struct LinearProgram {
  struct Row {
    std::vector<Rational> coeffs;
    RowSense sense = RowSense::le;
    Rational rhs;
  };

  Objective objective = Objective::maximize;
  std::vector<Rational> costs;
  std::vector<Row> rows;
  std::vector<std::optional<Rational>> lower;

  LinearProgram() = default;
  LinearProgram(Objective obj, int num_vars);

  int num_vars() const { return static_cast<int>(costs.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  /// Appends a row and returns its index.
  int add_row(std::vector<Rational> coeffs, RowSense sense, Rational rhs);
  void set_free(int var);
  void set_lower(int var, Rational bound);
  std::optional<Rational> lower_bound(int var) const;
  /// Throws InputError when rows do not match the variable count.
  void validate() const;
};

/// For an optimal solve `primal` and `dual` are certified witnesses:
///   - primal satisfies every row and bound;
///   - dual holds one multiplier per row with the sign rule of the objective
///     (maximize: y >= 0 on <= rows, y <= 0 on >= rows; minimize: the reverse),
///     reduced costs c - A^T y have the right sign on bounded variables and
///     vanish on free ones;
///   - value = c.x = b.y + sum_j l_j (c - A^T y)_j exactly.
/// For an infeasible program `farkas` holds row multipliers proving it.
struct Solution {
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> farkas;
  int pivots = 0;
};

/// Two-phase dense-tableau simplex with Bland's rule. Deterministic.
Solution solve(const LinearProgram& program);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> point;
  std::vector<Rational> farkas;
};

FeasibilityResult check_feasible(const LinearProgram& program);

bool is_primal_feasible(const LinearProgram& program, const std::vector<Rational>& x);
/// Re-checks the optimality witnesses described on `Solution`.
bool certify_optimal(const LinearProgram& program, const Solution& sol, std::string* why = nullptr);
/// Checks that `y` proves infeasibility: sign rules per row, y^T A has the
/// sign forced by each variable's bound, and the bound on y^T A x beats y^T b.
bool certify_infeasible(const LinearProgram& program, const std::vector<Rational>& y,
                        std::string* why = nullptr);

}  // namespace sensilab::lp
