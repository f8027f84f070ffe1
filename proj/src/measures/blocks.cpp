#include "sensilab/measures/blocks.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>

#include "sensilab/core/errors.hpp"
#include "sensilab/parallel/kernels.hpp"

namespace sensilab::measures {
namespace {

using Table = std::vector<std::uint64_t>;

void require_block_arity(const BooleanFunction& f, const Budget& budget, const char* what) {
  if (f.arity() > budget.block_arity)
    throw SizeError(std::string(what) + ": arity " + std::to_string(f.arity()) +
                    " exceeds the block-enumeration limit of " + std::to_string(budget.block_arity));
}

void mask_tail(Table& t, int arity) {
  if (arity < 6) t[0] &= (std::uint64_t{1} << (std::uint64_t{1} << arity)) - 1;
}

/// Bit B is set iff f(x ^ B) != f(x).
Table sensitivity_table(const BooleanFunction& f, std::uint64_t x) {
  const auto in = f.words();
  Table t(in.size());
  par::xor_permute(in, f.arity(), x, t, par::Exec::serial);
  if (f(x)) {
    for (auto& w : t) w = ~w;
    mask_tail(t, f.arity());
  }
  return t;
}

bool bit(const Table& t, std::uint64_t i) { return (t[i >> 6] >> (i & 63)) & 1u; }

std::vector<std::uint32_t> set_bits(const Table& t) {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < t.size(); ++w) {
    std::uint64_t word = t[w];
    while (word) {
      const int b = std::countr_zero(word);
      out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
      word &= word - 1;
    }
  }
  return out;
}

void check_point(const BooleanFunction& f, std::uint64_t x) {
  if (x >= f.size()) throw InputError("input index " + std::to_string(x) + " out of range");
}

/// Drops members that strictly contain another member.
std::vector<std::uint32_t> minimal_members(std::vector<std::uint32_t> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::stable_sort(family.begin(), family.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint32_t> out;
  for (auto s : family) {
    const bool dominated = std::any_of(out.begin(), out.end(), [&](std::uint32_t m) { return (m & s) == m; });
    if (!dominated) out.push_back(s);
  }
  return out;
}

class PackingSearch {
 public:
  explicit PackingSearch(std::vector<std::uint32_t> family) : family_(std::move(family)) {}

  std::vector<std::uint32_t> run() {
    // Greedy start by increasing size.
    std::uint32_t used = 0;
    for (auto s : family_)
      if ((s & used) == 0) {
        best_.push_back(s);
        used |= s;
      }
    std::vector<std::uint32_t> chosen;
    search(family_, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void search(const std::vector<std::uint32_t>& cands, std::vector<std::uint32_t>& chosen) {
    if (cands.empty()) {
      if (chosen.size() > best_.size()) best_ = chosen;
      return;
    }
    std::uint32_t uni = 0;
    int min_size = 64;
    for (auto s : cands) {
      uni |= s;
      min_size = std::min(min_size, std::popcount(s));
    }
    const std::size_t bound =
        chosen.size() + std::min<std::size_t>(cands.size(), static_cast<std::size_t>(std::popcount(uni) / min_size));
    if (bound <= best_.size()) return;
    const std::uint32_t e = uni & (~uni + 1);
    for (auto s : cands) {
      if ((s & e) == 0) continue;
      std::vector<std::uint32_t> next;
      for (auto t : cands)
        if ((t & s) == 0) next.push_back(t);
      chosen.push_back(s);
      search(next, chosen);
      chosen.pop_back();
    }
    std::vector<std::uint32_t> without;
    for (auto t : cands)
      if ((t & e) == 0) without.push_back(t);
    search(without, chosen);
  }

  std::vector<std::uint32_t> family_;
  std::vector<std::uint32_t> best_;
};

class HittingSearch {
 public:
  explicit HittingSearch(std::vector<std::uint32_t> family) : family_(std::move(family)) {}

  std::uint32_t run(int universe) {
    best_ = universe >= 32 ? ~0u : (1u << universe) - 1;
    best_size_ = std::popcount(best_);
    search(0);
    return best_;
  }

 private:
  void search(std::uint32_t chosen) {
    const int size = std::popcount(chosen);
    // Lower bound: greedily collect pairwise disjoint unhit sets.
    std::uint32_t used = 0;
    int disjoint = 0;
    const std::uint32_t* first = nullptr;
    for (const auto& s : family_) {
      if (s & chosen) continue;
      if (!first) first = &s;
      if ((s & used) == 0) {
        used |= s;
        ++disjoint;
      }
    }
    if (!first) {
      if (size < best_size_) {
        best_ = chosen;
        best_size_ = size;
      }
      return;
    }
    if (size + disjoint >= best_size_) return;
    std::uint32_t s = *first;
    while (s) {
      const std::uint32_t e = s & (~s + 1);
      search(chosen | e);
      s &= s - 1;
    }
  }

  std::vector<std::uint32_t> family_;
  std::uint32_t best_ = 0;
  int best_size_ = 0;
};

/// Smallest S such that no sensitive block avoids S, given the OR-zeta table of
/// the sensitivity table. Enumerates |S| = 0, 1, ... in lexicographic order.
std::uint32_t smallest_hitting_complement(const Table& zeta, int n) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (int c = 0; c <= n; ++c) {
    std::vector<int> idx(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) idx[i] = i;
    for (;;) {
      std::uint64_t s = 0;
      for (int i : idx) s |= std::uint64_t{1} << i;
      if (!bit(zeta, full & ~s)) return static_cast<std::uint32_t>(s);
      int i = c - 1;
      while (i >= 0 && idx[i] == n - c + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw InvariantError("no certificate found");
}

PartialAssignment restrict_point(std::uint64_t x, std::uint32_t support, int n) {
  PartialAssignment p(n);
  for (int i = 0; i < n; ++i)
    if ((support >> i) & 1u) p.set(i, static_cast<int>((x >> i) & 1u));
  return p;
}

template <typename T, typename Fn>
SideProfile<T> profile_of(const BooleanFunction& f, Fn&& fn) {
  SideProfile<T> p;
  bool first = true;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    T v = fn(x);
    if (f(x)) p.one = std::max(p.one, v);
    else p.zero = std::max(p.zero, v);
    if (first || v > p.all) {
      p.all = v;
      p.argmax = x;
      first = false;
    }
  }
  return p;
}

}  // namespace

std::vector<std::uint32_t> sensitive_blocks(const BooleanFunction& f, std::uint64_t x) {
  require_block_arity(f, default_budget(), "sensitive_blocks");
  check_point(f, x);
  return set_bits(sensitivity_table(f, x));
}

std::vector<std::uint32_t> minimal_block_masks(const BooleanFunction& f, std::uint64_t x,
                                               const Budget& budget) {
  require_block_arity(f, budget, "minimal_sensitive_blocks");
  check_point(f, x);
  const int n = f.arity();
  const Table g = sensitivity_table(f, x);
  Table z = g;
  par::zeta_or_subsets(z, n, par::Exec::serial);
  Table proper(g.size(), 0);
  for (int i = 0; i < n; ++i) par::or_shift_up(z, n, i, proper, par::Exec::serial);
  Table minimal(g.size());
  for (std::size_t w = 0; w < g.size(); ++w) minimal[w] = g[w] & ~proper[w];
  auto out = set_bits(minimal);
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return out;
}

std::vector<SensitiveBlock> minimal_sensitive_blocks(const BooleanFunction& f, std::uint64_t x,
                                                     const Budget& budget) {
  std::vector<SensitiveBlock> out;
  for (auto b : minimal_block_masks(f, x, budget)) out.push_back(SensitiveBlock{b, x, true});
  return out;
}

std::vector<std::uint32_t> max_disjoint_packing(const std::vector<std::uint32_t>& family, int universe) {
  (void)universe;
  std::vector<std::uint32_t> nonempty;
  for (auto s : family)
    if (s) nonempty.push_back(s);
  return PackingSearch(minimal_members(std::move(nonempty))).run();
}

std::uint32_t min_hitting_set(const std::vector<std::uint32_t>& family, int universe) {
  for (auto s : family)
    if (s == 0) throw InputError("the empty set cannot be hit");
  return HittingSearch(minimal_members(family)).run(universe);
}

int sensitivity(const BooleanFunction& f, std::uint64_t x) {
  check_point(f, x);
  int s = 0;
  for (int i = 0; i < f.arity(); ++i) s += f(x ^ (std::uint64_t{1} << i)) != f(x);
  return s;
}

SideProfile<int> sensitivity_profile(const BooleanFunction& f) {
  return profile_of<int>(f, [&](std::uint64_t x) { return sensitivity(f, x); });
}

BlockPacking block_sensitivity(const BooleanFunction& f, std::uint64_t x, std::optional<int> max_block_size,
                               const Budget& budget) {
  check_point(f, x);
  const int n = f.arity();
  std::vector<std::uint32_t> family;
  if (max_block_size) {
    if (*max_block_size < 1) throw InputError("block size bound must be positive");
    if (n > 32) throw SizeError("block masks hold at most 32 coordinates");
    const int k = std::min(*max_block_size, n);
    const bool fx = f(x);
    // Enumerate all blocks of size <= k.
    std::function<void(int, std::uint32_t, int)> rec = [&](int start, std::uint32_t b, int size) {
      if (size > 0 && f(x ^ b) != fx) family.push_back(b);
      if (size == k) return;
      for (int i = start; i < n; ++i) rec(i + 1, b | (1u << i), size + 1);
    };
    rec(0, 0, 0);
  } else {
    family = minimal_block_masks(f, x, budget);
  }
  BlockPacking r;
  r.blocks = max_disjoint_packing(family, n);
  r.value = static_cast<int>(r.blocks.size());
  return r;
}

SideProfile<int> block_sensitivity_profile(const BooleanFunction& f, std::optional<int> max_block_size,
                                           const Budget& budget) {
  return profile_of<int>(f, [&](std::uint64_t x) { return block_sensitivity(f, x, max_block_size, budget).value; });
}

lp::LinearProgram packing_program(const std::vector<std::uint32_t>& blocks, int universe) {
  lp::LinearProgram p(lp::Objective::maximize, static_cast<int>(blocks.size()));
  for (auto& c : p.costs) c = 1;
  for (int i = 0; i < universe; ++i) {
    std::vector<Rational> row(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if ((blocks[b] >> i) & 1u) row[b] = 1;
    p.add_row(std::move(row), lp::RowSense::le, 1);
  }
  return p;
}

lp::LinearProgram hitting_program(const std::vector<std::uint32_t>& blocks, int universe) {
  lp::LinearProgram p(lp::Objective::minimize, universe);
  for (auto& c : p.costs) c = 1;
  for (auto b : blocks) {
    std::vector<Rational> row(static_cast<std::size_t>(universe));
    for (int i = 0; i < universe; ++i)
      if ((b >> i) & 1u) row[i] = 1;
    p.add_row(std::move(row), lp::RowSense::ge, 1);
  }
  return p;
}

FractionalBlockSensitivity fractional_block_sensitivity(const BooleanFunction& f, std::uint64_t x,
                                                        const Budget& budget) {
  FractionalBlockSensitivity r;
  r.blocks = minimal_block_masks(f, x, budget);
  const int n = f.arity();
  r.coordinate_weights.assign(static_cast<std::size_t>(n), Rational(0));
  if (r.blocks.empty()) return r;
  const auto sol = lp::solve(packing_program(r.blocks, n));
  if (sol.status != lp::Status::optimal) throw InvariantError("packing program not optimal");
  r.value = sol.value;
  r.block_weights = sol.primal;
  r.coordinate_weights = sol.dual;
  // The dual must be a fractional hitting assignment of the same value.
  Rational total;
  for (const auto& c : r.coordinate_weights) {
    if (sgn(c) < 0) throw InvariantError("negative hitting weight");
    total += c;
  }
  for (auto b : r.blocks) {
    Rational hit;
    for (int i = 0; i < n; ++i)
      if ((b >> i) & 1u) hit += r.coordinate_weights[i];
    if (hit < 1) throw InvariantError("dual weights fail to hit a block");
  }
  if (total != r.value) throw InvariantError("packing and hitting values differ");
  return r;
}

SideProfile<Rational> fractional_block_sensitivity_profile(const BooleanFunction& f, const Budget& budget) {
  return profile_of<Rational>(f, [&](std::uint64_t x) { return fractional_block_sensitivity(f, x, budget).value; });
}

CertificateResult certificate_complexity(const BooleanFunction& f, std::uint64_t x, const Budget& budget) {
  require_block_arity(f, budget, "certificate_complexity");
  return certificate_complexity_large(f, x);
}

CertificateResult certificate_complexity_large(const BooleanFunction& f, std::uint64_t x) {
  check_point(f, x);
  const int n = f.arity();
  Table z = sensitivity_table(f, x);
  par::zeta_or_subsets(z, n, par::Exec::parallel);
  const std::uint32_t s = smallest_hitting_complement(z, n);
  return CertificateResult{std::popcount(s), restrict_point(x, s, n)};
}

SideProfile<int> certificate_profile(const BooleanFunction& f, const Budget& budget) {
  require_block_arity(f, budget, "certificate_profile");
  return profile_of<int>(f, [&](std::uint64_t x) { return certificate_complexity(f, x, budget).size; });
}

}  // namespace sensilab::measures
