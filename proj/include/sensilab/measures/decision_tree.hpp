#pragma once

#include <cstdint>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/partial_assignment.hpp"

namespace sensilab::measures {

/// Decision tree over Boolean inputs. Node 0 is the root.
struct DecisionTree {
  struct Node {
    int variable = -1;  // -1 for leaves
    int child0 = -1;
    int child1 = -1;
    bool value = false;  // leaves only
  };
  std::vector<Node> nodes;
  int depth = 0;

  bool evaluate(std::uint64_t x) const;
  /// Partial assignment read along the path to every leaf with the given value.
  std::vector<PartialAssignment> leaf_certificates(int arity, bool value) const;
};

/// Exact D(f) by minimax over all subcubes, with an optimal tree.
/// Ties pick the lowest-index variable.
DecisionTree decision_tree_depth(const BooleanFunction& f, const Budget& budget = default_budget());

/// Subcube table used by the tree search, exposed for tests: entries are
/// indexed in base 3 (digit 0/1 fixed, 2 free) with coordinate 0 least significant.
struct SubcubeTable {
  int arity = 0;
  std::vector<std::uint8_t> value;  // 0, 1, or 2 for non-constant
  std::vector<std::uint8_t> depth;
};
SubcubeTable subcube_table(const BooleanFunction& f, const Budget& budget = default_budget());

}  // namespace sensilab::measures
