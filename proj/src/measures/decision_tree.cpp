#include "sensilab/measures/decision_tree.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab::measures {
namespace {

constexpr std::uint8_t kMixed = 2;

std::vector<std::uint64_t> powers_of_three(int n) {
  std::vector<std::uint64_t> p(static_cast<std::size_t>(n + 1), 1);
  for (int i = 1; i <= n; ++i) p[i] = p[i - 1] * 3;
  return p;
}

struct Builder {
  const SubcubeTable& table;
  const std::vector<std::uint64_t>& pow3;
  DecisionTree tree;

  /// Lowest-index variable achieving the minimax depth at cube c.
  int best_variable(std::uint64_t c) const {
    int best = -1;
    int best_depth = 1 << 30;
    std::uint64_t rest = c;
    for (int i = 0; i < table.arity; ++i, rest /= 3) {
      if (rest % 3 != 2) continue;
      const auto d0 = table.depth[c - 2 * pow3[i]];
      const auto d1 = table.depth[c - pow3[i]];
      const int d = d0 > d1 ? d0 : d1;
      if (d < best_depth) {
        best_depth = d;
        best = i;
      }
    }
    return best;
  }

  int build(std::uint64_t c) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (table.value[c] != kMixed) {
      tree.nodes[id].value = table.value[c] == 1;
      return id;
    }
    const int v = best_variable(c);
    const int a = build(c - 2 * pow3[v]);
    const int b = build(c - pow3[v]);
    tree.nodes[id].variable = v;
    tree.nodes[id].child0 = a;
    tree.nodes[id].child1 = b;
    return id;
  }
};

void collect(const DecisionTree& t, int node, PartialAssignment& path, bool value,
             std::vector<PartialAssignment>& out) {
  const auto& nd = t.nodes[node];
  if (nd.variable < 0) {
    if (nd.value == value) out.push_back(path);
    return;
  }
  path.set(nd.variable, 0);
  collect(t, nd.child0, path, value, out);
  path.set(nd.variable, 1);
  collect(t, nd.child1, path, value, out);
  path.clear(nd.variable);
}

}  // namespace

bool DecisionTree::evaluate(std::uint64_t x) const {
  int node = 0;
  while (nodes[node].variable >= 0)
    node = ((x >> nodes[node].variable) & 1u) ? nodes[node].child1 : nodes[node].child0;
  return nodes[node].value;
}

std::vector<PartialAssignment> DecisionTree::leaf_certificates(int arity, bool value) const {
  std::vector<PartialAssignment> out;
  PartialAssignment path(arity);
  if (!nodes.empty()) collect(*this, 0, path, value, out);
  return out;
}

SubcubeTable subcube_table(const BooleanFunction& f, const Budget& budget) {
  const int n = f.arity();
  if (n > budget.decision_tree_arity)
    throw SizeError("decision tree search: arity " + std::to_string(n) + " exceeds the limit of " +
                    std::to_string(budget.decision_tree_arity));
  const auto pow3 = powers_of_three(n);
  const std::uint64_t cubes = pow3[n];
  SubcubeTable t;
  t.arity = n;
  t.value.assign(cubes, 0);
  t.depth.assign(cubes, 0);
  std::vector<std::uint8_t> digit(static_cast<std::size_t>(n), 0);
  SearchClock clock(budget);
  for (std::uint64_t c = 0; c < cubes; ++c) {
    int lowest_free = -1;
    std::uint64_t x = 0;
    for (int i = 0; i < n; ++i) {
      if (digit[i] == 2) {
        if (lowest_free < 0) lowest_free = i;
      } else if (digit[i] == 1) {
        x |= std::uint64_t{1} << i;
      }
    }
    if (lowest_free < 0) {
      t.value[c] = f(x) ? 1 : 0;
    } else {
      const auto a = t.value[c - 2 * pow3[lowest_free]];
      const auto b = t.value[c - pow3[lowest_free]];
      t.value[c] = a == b ? a : kMixed;
      if (t.value[c] == kMixed) {
        int best = 255;
        for (int i = lowest_free; i < n; ++i) {
          if (digit[i] != 2) continue;
          const auto d0 = t.depth[c - 2 * pow3[i]];
          const auto d1 = t.depth[c - pow3[i]];
          const int d = d0 > d1 ? d0 : d1;
          if (d < best) best = d;
        }
        t.depth[c] = static_cast<std::uint8_t>(best + 1);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (++digit[i] < 3) break;
      digit[i] = 0;
    }
    if ((c & 0xffff) == 0) clock.check("decision tree search");
  }
  return t;
}

DecisionTree decision_tree_depth(const BooleanFunction& f, const Budget& budget) {
  const SubcubeTable table = subcube_table(f, budget);
  const auto pow3 = powers_of_three(f.arity());
  Builder b{table, pow3, {}};
  b.build(pow3[f.arity()] - 1);
  b.tree.depth = table.depth[pow3[f.arity()] - 1];
  return b.tree;
}

}  // namespace sensilab::measures
