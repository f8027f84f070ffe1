#include <doctest.h>

#include <random>

#include "sensilab/constructions/gadget.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/measures/blocks.hpp"
#include "sensilab/weighted/certify.hpp"

using namespace sensilab;
using namespace sensilab::weighted;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Minimum weight over every box of supported shape containing x, by enumeration.
Rational brute_weighted_c(const DenseFunction& f, const WeightFunction& w, const std::vector<Symbol>& x) {
  const int a = f.input_alphabet();
  std::vector<std::vector<SymbolSet>> options;
  for (auto xi : x) {
    std::vector<SymbolSet> opts;
    for (std::uint32_t m = 1; m < (1u << a); ++m) {
      if (!((m >> xi) & 1u)) continue;
      SymbolSet s;
      for (int e = 0; e < a; ++e)
        if ((m >> e) & 1u) s.insert(e);
      try {
        set_weight(s, w);
        opts.push_back(s);
      } catch (const UnsupportedError&) {
      }
    }
    options.push_back(opts);
  }
  std::optional<Rational> best;
  std::vector<std::size_t> c(x.size(), 0);
  const SymbolSet target = SymbolSet::singleton(f.evaluate(x));
  for (;;) {
    std::vector<SymbolSet> sets;
    for (std::size_t i = 0; i < x.size(); ++i) sets.push_back(options[i][c[i]]);
    const BoxCertificate box(a, sets);
    const Rational wt = certificate_weight(box, w);
    if ((!best || wt < *best) && is_certificate(f, box, target)) best = wt;
    std::size_t i = 0;
    for (; i < x.size(); ++i) {
      if (++c[i] < options[i].size()) break;
      c[i] = 0;
    }
    if (i == x.size()) break;
  }
  return *best;
}

DenseFunction random_dense(std::mt19937_64& rng, int n, int a) {
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<std::uint64_t>(a);
  std::vector<Symbol> t(size);
  for (auto& v : t) v = static_cast<Symbol>(rng() % 2);
  return DenseFunction("r", n, a, 2, t);
}

}  // namespace

TEST_CASE("set weights") {
  const WeightFunction w({1, 2});
  CHECK(set_weight(SymbolSet::of({0}), w) == 2);
  CHECK(set_weight(SymbolSet::full(3), w) == 0);
  CHECK(set_weight(SymbolSet::of({0, 2}), w) == 1);
  CHECK(set_weight(SymbolSet::of({2}), w) == 2);
  CHECK_THROWS_AS(set_weight(SymbolSet::of({1, 2}), w), UnsupportedError);
  CHECK(certificate_weight(BoxCertificate(4, 3), w) == 0);
  CHECK_THROWS_AS(WeightFunction({1, 0}), InputError);
}

TEST_CASE("edge certificate weights of the Fano gadget") {
  const auto plane = constructions::projective_plane(2);
  const auto c = constructions::canonical_collection(plane);
  for (const auto& box : c.certificates) {
    CHECK(certificate_weight(box, constructions::fractional_weights(3)) == 3);
    CHECK(certificate_weight(box, constructions::integer_weights(3)) == 6);
    CHECK(certificate_size(box) == 3);
  }
}

TEST_CASE("weighted certificate complexity matches enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const auto f = random_dense(rng, n, 3);
    const WeightFunction w({q(1 + static_cast<long>(rng() % 3), 2), q(1 + static_cast<long>(rng() % 3), 3)});
    for (std::uint64_t idx = 0; idx < f.size(); ++idx) {
      const auto x = f.decode(idx);
      const auto r = weighted_certificate_complexity(f, w, x);
      const bool zero_or_single = [&] {
        for (auto s : x)
          if (s != 0) return false;
        return true;
      }();
      if (zero_or_single) CHECK(r.weight == brute_weighted_c(f, w, x));
      else CHECK(r.weight >= brute_weighted_c(f, w, x));
      CHECK(r.box.contains(x));
      CHECK(is_certificate(f, r.box, SymbolSet::singleton(f.evaluate(x))));
    }
  }
}

TEST_CASE("trivial weights reproduce Boolean certificate complexity") {
  std::mt19937_64 rng(37);
  const WeightFunction one({1});
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = BooleanFunction::from_predicate(4, [&](std::uint64_t) { return rng() & 1; });
    const auto d = f.to_dense();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      const int c = measures::certificate_complexity(f, x).size;
      CHECK(weighted_certificate_complexity(d, one, d.decode(x)).weight == c);
      CHECK(multivalued_certificate_complexity(d, d.decode(x)) == c);
    }
  }
}

TEST_CASE("raising a weight never lowers the zero certificate") {
  const auto plane = constructions::projective_plane(2);
  const auto g = constructions::goos_gadget(plane);
  const std::vector<Symbol> zero(7, 0);
  const auto base = constructions::fractional_weights(3);
  const auto v0 = weighted_certificate_complexity(*g.dense, base, zero).weight;
  CHECK(v0 == q(7, 2));
  for (int s = 1; s <= 3; ++s) {
    auto vals = base.values();
    vals[s - 1] += q(1, 3);
    CHECK(weighted_certificate_complexity(*g.dense, WeightFunction(vals), zero).weight >= v0);
  }
  const auto vc = weighted_certificate_complexity(*g.dense, base.ceiled(), zero).weight;
  CHECK(vc >= v0);
}

TEST_CASE("collection verification") {
  const auto plane = constructions::projective_plane(2);
  const auto g = constructions::goos_gadget(plane);
  const auto w = constructions::fractional_weights(3);
  const auto v = verify_collection(*g.dense, g.canonical, 1, &w);
  CHECK(v.ok());
  CHECK(v.simple);
  CHECK(v.max_size == 3);
  CHECK(*v.max_weight == 3);
  const auto lazy = verify_collection(g.function, g.canonical, 1, &w);
  CHECK(lazy.ok());
  auto missing = g.canonical;
  missing.certificates.pop_back();
  const auto vm = verify_collection(*g.dense, missing, 1, &w);
  CHECK(!vm.covering);
  CHECK(!vm.failures.empty());
  auto overlap = g.canonical;
  overlap.certificates.push_back(overlap.certificates[0]);
  CHECK(!verify_collection(*g.dense, overlap, 1, &w).unambiguous);
  auto wrong = g.canonical;
  wrong.certificates[0] = BoxCertificate(7, 4);
  CHECK(!verify_collection(*g.dense, wrong, 1, &w).certifying);
}

TEST_CASE("lazy certificate checks report sampling") {
  const auto plane = constructions::projective_plane(7);
  const auto f = constructions::gadget_function(plane);
  const auto c = constructions::canonical_collection(plane);
  Budget small;
  small.scan_points = 1000;
  const auto r = is_certificate(f, c.certificates[0], SymbolSet::singleton(1), 256, 0, small);
  CHECK(r.holds);
  CHECK(r.coverage == Coverage::sampled);
  CHECK(r.points_checked == 256);
  const auto bad = is_certificate(f, BoxCertificate(57, 9), SymbolSet::singleton(1), 256, 0, small);
  CHECK(!bad.holds);
  CHECK(!bad.counterexample.empty());
}

TEST_CASE("branching fallback agrees with the grid search") {
  std::mt19937_64 rng(41);
  Budget tiny;
  tiny.dense_entries = 4;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_dense(rng, 3, 4);
    const WeightFunction w({q(1, 2), 1, q(3, 2)});
    for (std::uint64_t idx = 0; idx < f.size(); idx += 5) {
      const auto x = f.decode(idx);
      CHECK(weighted_certificate_complexity(f, w, x).weight ==
            weighted_certificate_complexity(f, w, x, std::nullopt, tiny).weight);
    }
  }
}
