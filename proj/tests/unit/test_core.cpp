#include <doctest.h>

#include <random>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/dense_function.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/core/io.hpp"
#include "sensilab/core/lazy_function.hpp"

using namespace sensilab;

namespace {

BooleanFunction parity(int n) {
  return BooleanFunction::from_predicate(n, [](std::uint64_t x) { return __builtin_popcountll(x) & 1; }, "xor");
}

}  // namespace

TEST_CASE("evaluate basic functions") {
  const auto or2 = BooleanFunction::from_predicate(2, [](std::uint64_t x) { return x != 0; }).to_dense();
  const Symbol p01[] = {0, 1};
  CHECK(or2.evaluate(p01) == 1);
  const auto xor3 = parity(3).to_dense();
  const Symbol p110[] = {1, 1, 0};
  CHECK(xor3.evaluate(p110) == 0);
  const Symbol bad[] = {0, 2};
  CHECK_THROWS_AS(or2.evaluate(bad), InputError);
}

TEST_CASE("encode and decode") {
  const Radix r3(3, 2);
  const Symbol p[] = {1, 0, 0};
  CHECK(r3.encode(p) == 1);
  const Radix r(2, 3);
  const Symbol q[] = {2, 1};
  CHECK(r.encode(q) == 5);
  CHECK(r.decode(0) == std::vector<Symbol>{0, 0});
  for (std::uint64_t i = 0; i < r.size(); ++i) CHECK(r.encode(r.decode(i)) == i);
  CHECK_THROWS_AS(r.decode(9), InputError);
}

TEST_CASE("restrict") {
  const auto or2 = BooleanFunction::from_predicate(2, [](std::uint64_t x) { return x != 0; });
  auto g = or2.restrict(PartialAssignment::parse("1*"));
  CHECK(g.arity() == 1);
  CHECK(g.count_ones() == 2);
  auto h = parity(3).restrict(PartialAssignment::parse("*0*"));
  CHECK(h == parity(2));
  const auto and2 = BooleanFunction::from_predicate(2, [](std::uint64_t x) { return x == 3; });
  CHECK(and2.restrict(PartialAssignment::parse("0*")).count_ones() == 0);
}

TEST_CASE("restriction agrees with evaluation on random functions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4;
    const auto f = BooleanFunction::from_predicate(n, [&](std::uint64_t) { return rng() & 1; });
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      PartialAssignment p(n);
      for (int i = 0; i < n; ++i)
        if (rng() & 1) p.set(i, static_cast<int>((x >> i) & 1u));
      const auto g = f.restrict(p);
      std::uint64_t y = 0;
      int j = 0;
      for (int i = 0; i < n; ++i)
        if (p.is_free(i)) y |= ((x >> i) & 1u) << j++;
      CHECK(g(y) == f(x));
    }
  }
}

TEST_CASE("partial assignment algebra") {
  const auto p = PartialAssignment::parse("01*");
  const auto q = PartialAssignment::parse("*11");
  CHECK(p.size() == 2);
  CHECK(p.support() == std::vector<int>{0, 1});
  CHECK(p.consistent_with(q));
  CHECK(q.consistent_with(p));
  const auto u = p.merge(q);
  REQUIRE(u);
  CHECK(u->to_string() == "011");
  CHECK(u->size() <= p.size() + q.size());
  CHECK(u->consistent_with(p));
  CHECK(!p.merge(PartialAssignment::parse("1**")));
  CHECK(PartialAssignment::parse("1*0").contains_bits(0b001));
}

TEST_CASE("box certificates") {
  BoxCertificate b(3, 4);
  CHECK(b.size() == 0);
  CHECK(b.is_simple());
  b.fix(0, 2);
  CHECK(b.size() == 1);
  CHECK(b.is_simple());
  b.set(1, SymbolSet::of({0, 3}));
  CHECK(!b.is_simple());
  CHECK(b.volume().value() == 8u);
  std::uint64_t count = 0;
  BoxOdometer odo(b);
  do {
    CHECK(b.contains(odo.point()));
    ++count;
  } while (odo.next());
  CHECK(count == 8);
  BoxCertificate c(3, 4);
  c.fix(0, 1);
  CHECK(!b.consistent_with(c));
}

TEST_CASE("function file round trip") {
  const auto or3 = BooleanFunction::from_predicate(3, [](std::uint64_t x) { return x != 0; }, "or3").to_dense();
  CHECK(parse_function(format_function(or3)) == or3);
  CHECK(parse_function(format_function(or3, true)) == or3);
  const auto hex = BooleanFunction::from_predicate(2, [](std::uint64_t x) { return x != 0; });
  CHECK(hex.to_hex() == "e");
  const std::string bad = "{\n  \"name\": \"x\",\n  \"arity\": 2,\n  \"input_alphabet_size\": 2,\n"
                          "  \"output_alphabet_size\": 2,\n  \"table\": \"011\"\n}";
  try {
    parse_function(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
  CHECK_THROWS_AS(parse_function("{\"arity\": 1, \"input_alphabet_size\": 2, \"output_alphabet_size\": 2, \"table\": \"02\"}"),
                  ParseError);
  CHECK_THROWS_AS(parse_function("{\"arity\": 1,"), ParseError);
  std::vector<Symbol> t(9);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Symbol>(i % 4);
  const DenseFunction m("m", 2, 3, 4, t);
  CHECK(parse_function(format_function(m)) == m);
}

TEST_CASE("collection file round trip") {
  CertificateCollection c;
  c.label = "x";
  c.alphabet = 3;
  BoxCertificate b(2, 3);
  b.set(0, SymbolSet::of({0, 2}));
  c.certificates.push_back(b);
  const auto back = parse_collection(collection_to_json(c).dump());
  CHECK(back.label == "x");
  CHECK(back.alphabet == 3);
  REQUIRE(back.certificates.size() == 1);
  CHECK(back.certificates[0] == b);
  const auto bare = parse_collection("[\"01*\", \"1*0\"]");
  CHECK(bare.certificates.size() == 2);
  CHECK(bare.certificates[1].to_string() == "1*0");
}

TEST_CASE("lazy composition agrees with materialization") {
  std::mt19937_64 rng(5);
  const auto outer = BooleanFunction::from_predicate(3, [&](std::uint64_t) { return rng() & 1; });
  std::vector<Symbol> t(9);
  for (auto& v : t) v = static_cast<Symbol>(rng() % 2);
  const auto inner = LazyFunction::dense(DenseFunction("g", 2, 3, 2, t));
  const auto comp = LazyFunction::compose_copies(LazyFunction::dense(outer), inner);
  const auto dense = comp.materialize();
  CHECK(dense.size() == 729);
  std::vector<Symbol> point(6, 0);
  for (std::uint64_t i = 0; i < dense.size(); ++i) {
    const Symbol y[] = {inner.evaluate(std::span<const Symbol>(point.data(), 2)),
                        inner.evaluate(std::span<const Symbol>(point.data() + 2, 2)),
                        inner.evaluate(std::span<const Symbol>(point.data() + 4, 2))};
    const std::uint64_t idx = y[0] | (y[1] << 1) | (y[2] << 2);
    CHECK(dense.at(i) == static_cast<Symbol>(outer(idx)));
    CHECK(comp.evaluate(point) == dense.at(i));
    next_point(point, 3);
  }
  const auto b = LazyFunction::booleanize(comp);
  CHECK(b.arity() == 12);
  const auto bt = b.materialize_boolean();
  std::vector<Symbol> bits(12);
  for (std::uint64_t x = 0; x < bt.size(); ++x) {
    for (int i = 0; i < 12; ++i) bits[i] = (x >> i) & 1u;
    std::vector<Symbol> sym(6);
    for (int j = 0; j < 6; ++j) sym[j] = decode_code(bits[2 * j] | (bits[2 * j + 1] << 1), 3);
    CHECK(bt(x) == (comp.evaluate(sym) != 0));
  }
}

TEST_CASE("dense budget is enforced") {
  Budget small;
  small.dense_entries = 100;
  const auto f = LazyFunction::dense(BooleanFunction(4));
  const auto g = LazyFunction::compose_copies(f, LazyFunction::dense(BooleanFunction(2)));
  CHECK(!g.fits_dense(small));
  CHECK_THROWS_AS(g.materialize(small), SizeError);
}
