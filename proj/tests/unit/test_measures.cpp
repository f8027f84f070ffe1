#include <doctest.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

#include "sensilab/measures/blocks.hpp"
#include "sensilab/measures/decision_tree.hpp"
#include "sensilab/measures/degree.hpp"
#include "sensilab/measures/junta.hpp"
#include "sensilab/measures/report.hpp"
#include "sensilab/measures/tree_sensitivity.hpp"
#include "sensilab/measures/unambiguous.hpp"

using namespace sensilab;
using namespace sensilab::measures;

namespace {

BooleanFunction make(int n, const std::function<bool(std::uint64_t)>& p) {
  return BooleanFunction::from_predicate(n, p);
}
BooleanFunction or_n(int n) { return make(n, [](std::uint64_t x) { return x != 0; }); }
BooleanFunction and_n(int n) {
  return make(n, [n](std::uint64_t x) { return x == (std::uint64_t{1} << n) - 1; });
}
BooleanFunction xor_n(int n) { return make(n, [](std::uint64_t x) { return std::popcount(x) & 1; }); }
BooleanFunction maj3() { return make(3, [](std::uint64_t x) { return std::popcount(x) >= 2; }); }

BooleanFunction random_function(std::mt19937_64& rng, int n) {
  return make(n, [&](std::uint64_t) { return rng() & 1; });
}

// C(f, x) by scanning every subset of coordinates in order of size.
int brute_certificate(const BooleanFunction& f, std::uint64_t x) {
  const int n = f.arity();
  int best = n;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) >= best) continue;
    bool ok = true;
    for (std::uint64_t y = 0; y < f.size() && ok; ++y)
      if (((y ^ x) & s) == 0 && f(y) != f(x)) ok = false;
    if (ok) best = std::popcount(s);
  }
  return best;
}

// bs(f, x) by recursion over all sensitive blocks disjoint from those chosen.
int brute_block(const BooleanFunction& f, std::uint64_t x, std::uint32_t used, std::optional<int> k) {
  int best = 0;
  const std::uint32_t all = (1u << f.arity()) - 1;
  const std::uint32_t freec = all & ~used;
  for (std::uint32_t b = freec; b; b = (b - 1) & freec) {
    if (k && std::popcount(b) > *k) continue;
    if (f(x ^ b) == f(x)) continue;
    best = std::max(best, 1 + brute_block(f, x, used | b, k));
  }
  return best;
}

// D(f) by unmemoized minimax, restricted to the subcube given by fixed/values.
int brute_depth(const BooleanFunction& f, std::uint32_t fixed, std::uint32_t values) {
  bool seen0 = false, seen1 = false;
  for (std::uint64_t y = 0; y < f.size(); ++y)
    if ((y & fixed) == values) (f(y) ? seen1 : seen0) = true;
  if (!(seen0 && seen1)) return 0;
  int best = f.arity();
  for (int i = 0; i < f.arity(); ++i) {
    if ((fixed >> i) & 1u) continue;
    const std::uint32_t bit = 1u << i;
    best = std::min(best, 1 + std::max(brute_depth(f, fixed | bit, values),
                                       brute_depth(f, fixed | bit, values | bit)));
  }
  return best;
}

// UC_side(f) by trying every cover of the lowest uncovered point with monochromatic cubes.
int brute_uc(const BooleanFunction& f, int side) {
  const int n = f.arity();
  std::vector<Cube> mono;
  for (std::uint32_t fixed = 0; fixed < (1u << n); ++fixed)
    for (std::uint32_t v = fixed;; v = (v - 1) & fixed) {
      const Cube c{fixed, v};
      bool ok = true;
      for (std::uint64_t y = 0; y < f.size() && ok; ++y)
        if (c.contains(y) && static_cast<int>(f(y)) != side) ok = false;
      if (ok) mono.push_back(c);
      if (v == 0) break;
    }
  int best = n + 1;
  std::vector<bool> covered(f.size(), false);
  std::function<void(int)> go = [&](int cur) {
    if (cur >= best) return;
    std::uint64_t y = 0;
    while (y < f.size() && (covered[y] || static_cast<int>(f(y)) != side)) ++y;
    if (y == f.size()) {
      best = cur;
      return;
    }
    for (const auto& c : mono) {
      if (!c.contains(y)) continue;
      bool clash = false;
      for (std::uint64_t z = 0; z < f.size() && !clash; ++z) clash = c.contains(z) && covered[z];
      if (clash) continue;
      for (std::uint64_t z = 0; z < f.size(); ++z)
        if (c.contains(z)) covered[z] = true;
      go(std::max(cur, c.size()));
      for (std::uint64_t z = 0; z < f.size(); ++z)
        if (c.contains(z)) covered[z] = false;
    }
  };
  go(0);
  return best == n + 1 ? 0 : best;
}

}  // namespace

TEST_CASE("sensitivity and blocks of named functions") {
  for (int n = 1; n <= 5; ++n) {
    const auto f = or_n(n);
    const auto s = sensitivity_profile(f);
    CHECK(s.all == n);
    CHECK(s.zero == n);
    CHECK(s.one == 1);
    CHECK(block_sensitivity_profile(f).all == n);
    CHECK(certificate_profile(f).all == n);
    CHECK(decision_tree_depth(f).depth == n);
    CHECK(degree(f).degree == n);
    CHECK(sensitivity_profile(xor_n(n)).all == n);
  }
  const auto m = maj3();
  CHECK(sensitivity_profile(m).all == 2);
  CHECK(block_sensitivity_profile(m).all == 2);
  CHECK(certificate_profile(m).all == 2);
  CHECK(decision_tree_depth(m).depth == 3);
  CHECK(degree(m).degree == 3);
}

TEST_CASE("minimal sensitive blocks and fractional block sensitivity") {
  const auto m = maj3();
  const auto blocks = minimal_block_masks(m, 0);
  CHECK(blocks == std::vector<std::uint32_t>{3, 5, 6});
  const auto fbs = fractional_block_sensitivity(m, 0);
  CHECK(fbs.value == Rational(3, 2));
  CHECK(block_sensitivity(m, 0).value == 1);
  CHECK(certificate_complexity(m, 0).size == 2);
  Rational total = 0;
  for (const auto& w : fbs.block_weights) total += w;
  CHECK(total == fbs.value);
  CHECK(fractional_block_sensitivity_profile(m).all == 2);
}

TEST_CASE("packing and hitting agree with brute force") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int u = 6;
    std::vector<std::uint32_t> fam;
    const int m = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < m; ++i) fam.push_back(1 + static_cast<std::uint32_t>(rng() % 63));
    int best_hit = u;
    for (std::uint32_t h = 0; h < 64; ++h)
      if (std::all_of(fam.begin(), fam.end(), [&](std::uint32_t b) { return (b & h) != 0; }))
        best_hit = std::min(best_hit, std::popcount(h));
    const auto hit = min_hitting_set(fam, u);
    CHECK(std::popcount(hit) == best_hit);
    for (auto b : fam) CHECK((b & hit) != 0);
    int best_pack = 0;
    for (std::uint32_t sel = 1; sel < (1u << m); ++sel) {
      std::uint32_t seen = 0;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        if ((sel >> i) & 1u) {
          ok = (seen & fam[i]) == 0;
          seen |= fam[i];
        }
      if (ok) best_pack = std::max(best_pack, std::popcount(sel));
    }
    CHECK(static_cast<int>(max_disjoint_packing(fam, u).size()) == best_pack);
  }
}

TEST_CASE("pointwise measures match brute-force oracles") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    const auto f = random_function(rng, n);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      const auto c = certificate_complexity(f, x);
      CHECK(c.size == brute_certificate(f, x));
      CHECK(c.certificate.contains_bits(x));
      CHECK(c.certificate.size() == c.size);
      const auto bs = block_sensitivity(f, x);
      CHECK(bs.value == brute_block(f, x, 0, std::nullopt));
      CHECK(block_sensitivity(f, x, 1).value == sensitivity(f, x));
      CHECK(block_sensitivity(f, x, 2).value == brute_block(f, x, 0, 2));
      const auto fbs = fractional_block_sensitivity(f, x);
      CHECK(fbs.value >= bs.value);
      CHECK(fbs.value <= c.size);
      CHECK(certificate_complexity_large(f, x).size == c.size);
    }
    CHECK(decision_tree_depth(f).depth == brute_depth(f, 0, 0));
  }
}

TEST_CASE("decision trees compute the function") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_function(rng, 5);
    const auto t = decision_tree_depth(f);
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(t.evaluate(x) == f(x));
    for (int side = 0; side < 2; ++side) {
      const auto leaves = t.leaf_certificates(5, side);
      CHECK(is_unambiguous_collection(f, side, leaves));
      for (const auto& p : leaves) CHECK(p.size() <= t.depth);
    }
  }
  const auto table = subcube_table(xor_n(3));
  CHECK(table.depth.back() == 3);
  CHECK(table.value.back() == 2);
}

TEST_CASE("unambiguous certificate complexity") {
  CHECK(unambiguous_certificate_complexity(or_n(3), 1, UcMode::exact).value == 3);
  CHECK(unambiguous_certificate_complexity(and_n(3), 1, UcMode::exact).value == 3);
  CHECK(unambiguous_certificate_complexity(xor_n(3), 0, UcMode::exact).value == 3);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    const auto f = random_function(rng, n);
    for (int side = 0; side < 2; ++side) {
      const auto r = unambiguous_certificate_complexity(f, side, UcMode::exact);
      CHECK(r.exact);
      CHECK(r.value == brute_uc(f, side));
      CHECK(is_unambiguous_collection(f, side, r.collection));
      const auto up = unambiguous_certificate_complexity(f, side, UcMode::upper);
      CHECK(up.value >= r.value);
      CHECK(is_unambiguous_collection(f, side, up.collection));
    }
    const auto mn = uc_min(f, UcMode::exact);
    CHECK(mn.value == std::min(mn.zero.value, mn.one.value));
  }
  std::vector<PartialAssignment> overlap{PartialAssignment::parse("1**"), PartialAssignment::parse("*1*"),
                                         PartialAssignment::parse("**1")};
  std::string why;
  CHECK(!is_unambiguous_collection(or_n(3), 1, overlap, &why));
  CHECK(!why.empty());
}

TEST_CASE("degree polynomial interpolates") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_function(rng, 5);
    const auto p = degree(f);
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(p.evaluate(x) == static_cast<int>(f(x)));
  }
  CHECK(degree(xor_n(4)).degree == 4);
  CHECK(degree(BooleanFunction(3)).degree == 0);
}

TEST_CASE("tree sensitivity") {
  for (int n = 1; n <= 4; ++n) {
    const auto t = tree_sensitivity(xor_n(n));
    CHECK(t.size == n);
    CHECK(is_sensitive_tree(xor_n(n), t));
  }
  CHECK(tree_sensitivity(BooleanFunction(3)).size == 0);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_function(rng, 4);
    const auto t = tree_sensitivity(f);
    CHECK(is_sensitive_tree(f, t));
    CHECK(t.size >= sensitivity_profile(f).all);
  }
}

TEST_CASE("conical juntas") {
  const Rational zero = 0;
  CHECK(conical_junta_degree(and_n(3), JuntaVariant::exact, 1, zero).value == 3);
  const auto x = conical_junta_degree(xor_n(2), JuntaVariant::exact, 1, zero);
  CHECK(x.value == 2);
  CHECK(x.junta.approximates(xor_n(2)));
  // No nonnegative combination of size-1 terms represents xor2.
  const auto lp1 = junta_program(xor_n(2), zero, 1, false);
  CHECK(lp::solve(lp1).status == lp::Status::infeasible);
  const auto av = conical_junta_degree(or_n(2), JuntaVariant::average, 1, zero);
  CHECK(av.junta.approximates(or_n(2)));
  CHECK(av.value <= 2);
  CHECK(av.value >= 1);
  CHECK(term_of_index(0, 2).to_string() == "00");
  CHECK(term_of_index(8, 2).to_string() == "**");
}

TEST_CASE("approximate degree") {
  const Rational third(1, 3);
  CHECK(approx_degree(or_n(2), third).degree == 1);
  CHECK(approx_degree(or_n(3), third).degree == 2);
  CHECK(approx_degree(xor_n(2), third).degree == 2);
  CHECK(approx_degree(or_n(3), 0).degree == 3);
  CHECK_THROWS(approx_degree(or_n(2), Rational(1, 2)));
}

TEST_CASE("report respects the inequality chain on random functions") {
  std::mt19937_64 rng(23);
  ReportOptions o;
  for (const auto& k : measure_keys()) o.measures.insert(k);
  o.bounded_block_sizes = {2};
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = random_function(rng, 2 + trial % 3);
    const auto r = compute_report(f, o);
    CHECK(chain_violations(r).empty());
    CHECK(!r.any_skipped());
    CHECK(*r.get("bs_(2)") <= *r.get("bs"));
    CHECK(*r.get("uc") == std::max(*r.get("uc0"), *r.get("uc1")));
  }
}
