#pragma once

#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/partial_assignment.hpp"

namespace sensilab::measures {

enum class UcMode { exact, upper };

struct UcResult {
  int value = 0;
  bool exact = false;
  std::vector<PartialAssignment> collection;
};

/// UC_side(f). Exact mode searches (arity <= budget.uc_exact_arity) by
/// covering the least uncovered side-input with a disjoint side-certificate
/// subcube of size <= s and increasing s from the largest C_x on that side.
/// Upper mode returns the decision-tree leaf collection.
UcResult unambiguous_certificate_complexity(const BooleanFunction& f, int side, UcMode mode,
                                            const Budget& budget = default_budget());

struct UcMinResult {
  int value = 0;
  int side = 1;
  UcResult zero;
  UcResult one;
};
UcMinResult uc_min(const BooleanFunction& f, UcMode mode, const Budget& budget = default_budget());

/// Checks members are side-certificates, pairwise inconsistent, and cover f^-1(side).
bool is_unambiguous_collection(const BooleanFunction& f, int side,
                               const std::vector<PartialAssignment>& collection,
                               std::string* why = nullptr);

}  // namespace sensilab::measures
