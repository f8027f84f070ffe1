#include "sensilab/measures/tree_sensitivity.hpp"

#include <bit>
#include <string>
#include <unordered_set>

#include "sensilab/core/errors.hpp"

namespace sensilab::measures {
namespace {

class TreeSearch {
 public:
  TreeSearch(const BooleanFunction& f, SearchClock& clock) : f_(f), clock_(clock), n_(f.arity()) {}

  void run_from(std::uint64_t root, SensitiveTree& best) {
    root_ = root;
    best_ = &best;
    frontier_.clear();
    edges_.clear();
    in_tree_.clear();
    in_tree_.insert(root);
    used_ = 0;
    add_frontier(root);
    search(0);
  }

 private:
  void add_frontier(std::uint64_t v) {
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t w = v ^ (std::uint64_t{1} << i);
      if (w > root_ && f_(w) != f_(v)) frontier_.push_back({v, i});
    }
  }

  void search(std::size_t pos) {
    clock_.check("tree sensitivity search");
    const int size = static_cast<int>(edges_.size());
    if (size > best_->size) {
      best_->size = size;
      best_->root = root_;
      best_->edges = edges_;
    }
    if (best_->size >= n_) return;
    if (size + (n_ - std::popcount(used_)) <= best_->size) return;
    for (std::size_t p = pos; p < frontier_.size(); ++p) {
      const auto e = frontier_[p];
      const std::uint64_t w = e.from ^ (std::uint64_t{1} << e.direction);
      if ((used_ >> e.direction) & 1u) continue;
      if (in_tree_.count(w)) continue;
      // Include e; edges before p in the frontier stay excluded on this branch.
      const std::size_t saved = frontier_.size();
      used_ |= std::uint64_t{1} << e.direction;
      in_tree_.insert(w);
      edges_.push_back(e);
      add_frontier(w);
      search(p + 1);
      frontier_.resize(saved);
      edges_.pop_back();
      in_tree_.erase(w);
      used_ &= ~(std::uint64_t{1} << e.direction);
      if (best_->size >= n_) return;
    }
  }

  const BooleanFunction& f_;
  SearchClock& clock_;
  int n_;
  std::uint64_t root_ = 0;
  SensitiveTree* best_ = nullptr;
  std::vector<SensitiveTree::Edge> frontier_;
  std::vector<SensitiveTree::Edge> edges_;
  std::unordered_set<std::uint64_t> in_tree_;
  std::uint64_t used_ = 0;
};

}  // namespace

SensitiveTree tree_sensitivity(const BooleanFunction& f, const Budget& budget) {
  if (f.arity() > budget.tree_sensitivity_arity)
    throw SizeError("tree sensitivity: arity " + std::to_string(f.arity()) + " exceeds the limit of " +
                    std::to_string(budget.tree_sensitivity_arity));
  SensitiveTree best;
  SearchClock clock(budget);
  TreeSearch search(f, clock);
  for (std::uint64_t r = 0; r < f.size() && best.size < f.arity(); ++r) search.run_from(r, best);
  return best;
}

bool is_sensitive_tree(const BooleanFunction& f, const SensitiveTree& tree) {
  if (static_cast<int>(tree.edges.size()) != tree.size) return false;
  std::unordered_set<std::uint64_t> vertices{tree.root};
  std::uint64_t used = 0;
  for (const auto& e : tree.edges) {
    if (e.direction < 0 || e.direction >= f.arity()) return false;
    if ((used >> e.direction) & 1u) return false;
    used |= std::uint64_t{1} << e.direction;
    if (!vertices.count(e.from)) return false;
    const std::uint64_t w = e.from ^ (std::uint64_t{1} << e.direction);
    if (vertices.count(w)) return false;
    if (f(w) == f(e.from)) return false;
    vertices.insert(w);
  }
  return true;
}

}  // namespace sensilab::measures
