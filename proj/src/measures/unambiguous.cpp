#include "sensilab/measures/unambiguous.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "sensilab/core/errors.hpp"
#include "sensilab/measures/blocks.hpp"
#include "sensilab/measures/decision_tree.hpp"

namespace sensilab::measures {
namespace {

struct CubeInfo {
  std::uint64_t points;  // bit y set iff y lies in the cube
  Cube cube;
  int size;
};

/// All 3^n subcubes in base-3 index order (digit 2 = free).
std::vector<CubeInfo> enumerate_cubes(int n) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<CubeInfo> cubes(total);
  std::vector<std::uint8_t> digit(static_cast<std::size_t>(n), 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    Cube cube;
    int lowest_free = -1;
    for (int i = 0; i < n; ++i) {
      if (digit[i] == 2) {
        if (lowest_free < 0) lowest_free = i;
        continue;
      }
      cube.fixed |= 1u << i;
      if (digit[i] == 1) cube.values |= 1u << i;
    }
    std::uint64_t points;
    if (lowest_free < 0) {
      points = std::uint64_t{1} << cube.values;
    } else {
      std::uint64_t p = 1;
      for (int i = 0; i < lowest_free; ++i) p *= 3;
      points = cubes[c - 2 * p].points | cubes[c - p].points;
    }
    cubes[c] = CubeInfo{points, cube, cube.size()};
    for (int i = 0; i < n; ++i) {
      if (++digit[i] < 3) break;
      digit[i] = 0;
    }
  }
  return cubes;
}

class CoverSearch {
 public:
  CoverSearch(std::uint64_t side, const std::vector<std::vector<const CubeInfo*>>& options, SearchClock& clock)
      : side_(side), options_(options), clock_(clock) {}

  bool run(int bound, std::vector<const CubeInfo*>& out) {
    bound_ = bound;
    failed_.clear();
    chosen_.clear();
    if (!search(0)) return false;
    out = chosen_;
    return true;
  }

 private:
  bool search(std::uint64_t covered) {
    const std::uint64_t open = side_ & ~covered;
    if (open == 0) return true;
    if (failed_.count(covered)) return false;
    clock_.check("unambiguous certificate search");
    // Branch on the open point with the fewest usable cubes; fail if some point has none.
    int best = -1;
    std::size_t fewest = SIZE_MAX;
    for (std::uint64_t rest = open; rest; rest &= rest - 1) {
      const int x = std::countr_zero(rest);
      std::size_t usable = 0;
      for (const CubeInfo* c : options_[x]) {
        if (c->size > bound_) break;
        if (!(c->points & covered) && ++usable >= fewest) break;
      }
      if (usable == 0) return remember(covered);
      if (usable < fewest) {
        fewest = usable;
        best = x;
      }
    }
    for (const CubeInfo* c : options_[best]) {
      if (c->size > bound_) break;
      if (c->points & covered) continue;
      chosen_.push_back(c);
      if (search(covered | c->points)) return true;
      chosen_.pop_back();
    }
    return remember(covered);
  }

  bool remember(std::uint64_t covered) {
    if (failed_.size() >= kMaxMemo) failed_.clear();
    failed_.insert(covered);
    return false;
  }

  static constexpr std::size_t kMaxMemo = std::size_t{1} << 22;
  std::uint64_t side_;
  const std::vector<std::vector<const CubeInfo*>>& options_;
  SearchClock& clock_;
  int bound_ = 0;
  std::unordered_set<std::uint64_t> failed_;
  std::vector<const CubeInfo*> chosen_;
};

UcResult exact_uc(const BooleanFunction& f, int side, const Budget& budget) {
  const int n = f.arity();
  if (n > budget.uc_exact_arity || n > 6)
    throw SizeError("exact UC search: arity " + std::to_string(n) + " exceeds the limit of " +
                    std::to_string(std::min(budget.uc_exact_arity, 6)));
  std::uint64_t side_mask = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (f(x) == (side == 1)) side_mask |= std::uint64_t{1} << x;
  UcResult r;
  r.exact = true;
  if (side_mask == 0) return r;
  const auto cubes = enumerate_cubes(n);
  std::vector<std::vector<const CubeInfo*>> options(f.size());
  for (const auto& c : cubes) {
    if ((c.points & ~side_mask) != 0) continue;
    for (std::uint64_t x = 0; x < f.size(); ++x)
      if ((c.points >> x) & 1u) options[x].push_back(&c);
  }
  for (auto& o : options)
    std::stable_sort(o.begin(), o.end(), [](const CubeInfo* a, const CubeInfo* b) { return a->size < b->size; });
  int lower = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if ((side_mask >> x) & 1u) lower = std::max(lower, certificate_complexity(f, x, budget).size);
  const auto tree = decision_tree_depth(f, budget);
  const auto leaves = tree.leaf_certificates(n, side == 1);
  int upper = 0;
  for (const auto& p : leaves) upper = std::max(upper, p.size());
  SearchClock clock(budget);
  CoverSearch search(side_mask, options, clock);
  for (int s = lower; s < upper; ++s) {
    std::vector<const CubeInfo*> chosen;
    if (search.run(s, chosen)) {
      r.value = s;
      for (const auto* c : chosen) r.collection.push_back(PartialAssignment::from_cube(c->cube, n));
      std::sort(r.collection.begin(), r.collection.end());
      r.value = 0;
      for (const auto& p : r.collection) r.value = std::max(r.value, p.size());
      return r;
    }
  }
  r.collection = leaves;
  r.value = upper;
  return r;
}

}  // namespace

UcResult unambiguous_certificate_complexity(const BooleanFunction& f, int side, UcMode mode,
                                            const Budget& budget) {
  if (side != 0 && side != 1) throw InputError("side must be 0 or 1");
  if (mode == UcMode::exact) return exact_uc(f, side, budget);
  const auto tree = decision_tree_depth(f, budget);
  UcResult r;
  r.exact = false;
  r.collection = tree.leaf_certificates(f.arity(), side == 1);
  bool any_side = false;
  for (std::uint64_t x = 0; x < f.size() && !any_side; ++x) any_side = f(x) == (side == 1);
  if (!any_side) r.collection.clear();
  for (const auto& p : r.collection) r.value = std::max(r.value, p.size());
  return r;
}

UcMinResult uc_min(const BooleanFunction& f, UcMode mode, const Budget& budget) {
  UcMinResult r;
  r.zero = unambiguous_certificate_complexity(f, 0, mode, budget);
  r.one = unambiguous_certificate_complexity(f, 1, mode, budget);
  r.side = r.one.value <= r.zero.value ? 1 : 0;
  r.value = std::min(r.zero.value, r.one.value);
  return r;
}

bool is_unambiguous_collection(const BooleanFunction& f, int side,
                               const std::vector<PartialAssignment>& collection, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (const auto& p : collection)
    if (p.arity() != f.arity()) return fail("certificate arity mismatch");
  for (std::size_t a = 0; a < collection.size(); ++a)
    for (std::size_t b = a + 1; b < collection.size(); ++b)
      if (collection[a].consistent_with(collection[b]))
        return fail("certificates " + collection[a].to_string() + " and " + collection[b].to_string() +
                    " are consistent");
  std::vector<Cube> cubes;
  for (const auto& p : collection) cubes.push_back(p.to_cube());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    int inside = -1;
    for (std::size_t k = 0; k < cubes.size(); ++k)
      if (cubes[k].contains(x)) {
        inside = static_cast<int>(k);
        break;
      }
    const bool on_side = f(x) == (side == 1);
    if (inside >= 0 && !on_side)
      return fail("certificate " + collection[inside].to_string() + " contains input " + std::to_string(x) +
                  " with the other value");
    if (inside < 0 && on_side) return fail("input " + std::to_string(x) + " is not covered");
  }
  return true;
}

}  // namespace sensilab::measures
