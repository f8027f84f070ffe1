#pragma once

#include <cstdint>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/budget.hpp"

namespace sensilab::measures {

/// Subtree of the sensitivity graph with at most one edge per direction.
/// Size is the edge count, so a sensitive star at x has size s_x(f).
struct SensitiveTree {
  int size = 0;
  std::uint64_t root = 0;
  struct Edge {
    std::uint64_t from;
    int direction;
  };
  std::vector<Edge> edges;
};

SensitiveTree tree_sensitivity(const BooleanFunction& f, const Budget& budget = default_budget());

/// Checks that the edges form a tree of sensitive edges with distinct directions.
bool is_sensitive_tree(const BooleanFunction& f, const SensitiveTree& tree);

}  // namespace sensilab::measures
