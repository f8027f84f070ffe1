#include <doctest.h>

#include <cmath>
#include <random>

#include "sensilab/constructions/catalog.hpp"
#include "sensilab/constructions/compose.hpp"
#include "sensilab/constructions/gadget.hpp"
#include "sensilab/constructions/pipeline.hpp"
#include "sensilab/constructions/plane.hpp"
#include "sensilab/constructions/realizer.hpp"
#include "sensilab/constructions/transforms.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/measures/blocks.hpp"
#include "sensilab/measures/decision_tree.hpp"
#include "sensilab/measures/unambiguous.hpp"

using namespace sensilab;
using namespace sensilab::constructions;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("finite fields") {
  for (int order : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    const FiniteField f(order);
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < order; c += 3) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    for (int a = 1; a < order; ++a) CHECK(f.mul(a, f.inverse(a)) == 1);
  }
  CHECK_THROWS_AS(FiniteField(6), InputError);
}

TEST_CASE("projective planes") {
  const auto fano = projective_plane(2);
  CHECK(fano.n == 7);
  CHECK(fano.lines.size() == 7);
  CHECK(fano.lines[0].size() == 3);
  const auto tri = projective_plane(1);
  CHECK(tri.n == 3);
  for (const auto& l : tri.lines) CHECK(l.size() == 2);
  const auto p7 = projective_plane(7);
  CHECK(p7.n == 57);
  CHECK(p7.lines[5].size() == 8);
  CHECK(projective_plane(3).slot_line[0].size() == 4);
  CHECK_THROWS_AS(projective_plane(6), InputError);
  auto broken = fano;
  broken.lines[0][0] = broken.lines[0][1];
  CHECK(!verify_plane_axioms(broken));
  auto swapped = fano;
  std::swap(swapped.slot_line[fano.lines[0][0]][0], swapped.slot_line[fano.lines[0][0]][1]);
  std::string why;
  CHECK(!verify_rainbow(swapped, &why));
}

TEST_CASE("gadget values") {
  const auto g = goos_gadget(projective_plane(2));
  REQUIRE(g.dense);
  CHECK(g.function.evaluate(std::vector<Symbol>(7, 0)) == 0);
  std::vector<Symbol> x(7, 0);
  const int line = 3;
  for (int p : g.plane.lines[line]) x[p] = static_cast<Symbol>(g.plane.slot_of(p, line) + 1);
  CHECK(g.function.evaluate(x) == 1);
  CHECK(g.canonical.certificates.size() == 7);
  CHECK(g.canonical.max_size() == 3);
  CHECK(!goos_gadget(projective_plane(7)).dense);
}

TEST_CASE("weight realizer") {
  const weighted::WeightFunction w({1, 2});
  const auto r = weight_realizer(w);
  CHECK(r.function.arity() == 2);
  const Symbol a[] = {0, 2}, b[] = {0, 1}, z[] = {0, 0}, c[] = {1, 2};
  CHECK(r.function.evaluate(a) == 2);
  CHECK(r.function.evaluate(b) == 0);
  CHECK(r.function.evaluate(z) == 0);
  CHECK(r.function.evaluate(c) == 1);
  CHECK(r.collections[1].certificates.size() == 2);
  CHECK_THROWS_AS(weight_realizer(weighted::WeightFunction({q(1, 2)})), InputError);
}

TEST_CASE("rounding and Booleanization") {
  const auto w = fractional_weights(2);
  CHECK(w.values() == std::vector<Rational>{q(2, 3), q(4, 3)});
  CHECK(w.ceiled().values() == std::vector<Rational>{1, 2});
  CHECK(integer_weights(3).ceiled() == integer_weights(3));
  CHECK(decode_code(2, 3) == 2);
  CHECK(decode_code(3, 3) == 2);
  const auto cubes = subcube_decomposition({2, 3, 5, 6, 7}, 3);
  std::vector<int> hits(8, 0);
  for (const auto& c : cubes)
    for (unsigned x = 0; x < 8; ++x) hits[x] += c.contains(x) ? 1 : 0;
  CHECK(hits == std::vector<int>{0, 0, 1, 1, 0, 1, 1, 1});
  CHECK(subcube_decomposition({0, 1, 2, 3}, 2).size() == 1);
  CertificateCollection c;
  c.alphabet = 3;
  BoxCertificate box(2, 3);
  box.fix(0, 2);
  box.fix(1, 1);
  c.certificates.push_back(box);
  const auto bits = booleanize_collection(c);
  REQUIRE(bits.size() == 2);
  CHECK(bits[0].to_string() == "0110");
  CHECK(bits[1].to_string() == "1110");
  CHECK(symbol_bits(2, 3) == std::vector<int>{0, 1});
}

TEST_CASE("output extension and composition on the triangle") {
  const auto g = goos_gadget(projective_plane(1));
  const auto w = fractional_weights(2);
  const auto u = weighted::verify_collection(*g.dense, g.canonical, 1, &w);
  REQUIRE(u.ok());
  const auto ext = extend_output(weighted::WeightedFunction(g.function, w), u, 2, w);
  const auto tilde = ext.tilde.function.materialize();
  CHECK(tilde.input_alphabet() == 5);
  CHECK(tilde.evaluate(std::vector<Symbol>(3, 0)) == 0);
  std::vector<Symbol> x(3, 0);
  const auto& cert = g.canonical.certificates[0];
  for (int j = 0; j < 3; ++j)
    if (cert[j].count() == 1) x[j] = static_cast<Symbol>(pair_symbol(cert[j].only(), 2, 2));
  CHECK(tilde.evaluate(x) == 2);
  for (int i = 1; i <= 2; ++i) {
    const auto v = weighted::verify_collection(tilde, ext.by_output[i - 1], i, &ext.tilde.weight);
    CHECK(v.ok());
    CHECK(*v.max_weight <= w(i) * 2);
  }
  const auto comp = compose_weighted(g.function, g.canonical, ext);
  CHECK(comp.function.function.arity() == 9);
  CHECK(comp.collection.certificates.size() == 27);
  CHECK(comp.collection.max_size() <= 4);
  CHECK_THROWS_AS(extend_output(weighted::WeightedFunction(g.function, w), weighted::VerifiedCollection{}, 2, w),
                  PreconditionError);
}

TEST_CASE("desensitization") {
  const auto or2 = or_function(2);
  const std::vector<PartialAssignment> u{PartialAssignment::parse("1*"), PartialAssignment::parse("01")};
  const auto d = desensitize(or2, u);
  CHECK(d.function.arity() == 6);
  CHECK(measures::sensitivity_profile(d.function).zero == 1);
  int max_size = 0;
  for (const auto& p : d.collection) max_size = std::max(max_size, p.size());
  CHECK(max_size == 6);
  CHECK(measures::decision_tree_depth(d.function).depth >= 2);
  const auto d5 = desensitize(or2, u, 5);
  CHECK(d5.function.arity() == 10);
  CHECK_THROWS_AS(desensitize(or2, u, 4), InputError);
  const std::vector<PartialAssignment> overlap{PartialAssignment::parse("1*"), PartialAssignment::parse("*1")};
  CHECK_THROWS_AS(desensitize(or2, overlap), PreconditionError);
}

TEST_CASE("outer composition and the tight family") {
  const auto f = outer_compose(or_function(2), named_function("and2"));
  CHECK(f.arity() == 4);
  CHECK(measures::decision_tree_depth(f).depth == 4);
  CHECK(outer_compose(named_function("const0-2"), or_function(2)).is_constant());
  const auto t = tight_family(1);
  CHECK(t.collection[0].to_string() == "01*");
  CHECK(t.collection[1].to_string() == "*01");
  CHECK(t.collection[2].to_string() == "1*0");
  CHECK(t.function(0b001));
  CHECK(!t.function(0));
  const auto t2 = tight_family(2);
  CHECK(measures::sensitivity(t2.function, 0) == 5);
  CHECK(measures::block_sensitivity(t2.function, 0).value == 5);
  CHECK(measures::fractional_block_sensitivity(t2.function, 0).value == 5);
  for (const auto& p : t2.collection) CHECK(p.size() == 3);
}

TEST_CASE("catalog") {
  for (const auto& name : named_function_examples()) CHECK(named_function(name).name() == name);
  CHECK(named_function("xor3").count_ones() == 4);
  CHECK_THROWS_AS(named_function("nope"), InputError);
}

TEST_CASE("pipeline on the triangle") {
  PipelineOptions o;
  o.q = 1;
  const auto a = run_pipeline(o);
  CHECK(a.u == 2);
  CHECK(a.v == 2);
  CHECK(a.passed());
  CHECK(std::fabs(static_cast<double>(a.exponent()) - 1.0) < 1e-12);
  REQUIRE(a.h_prime_table);
  CHECK(a.h_prime_table->arity() == 12);
}

TEST_CASE("weight search on the Fano gadget") {
  const auto g = goos_gadget(projective_plane(2));
  const auto rows = weight_search(g, default_weight_candidates(3));
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) CHECK(r.u == 3);
  const auto lin = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.name == "i"; });
  REQUIRE(lin != rows.end());
  CHECK(lin->v == q(7, 2));
  CHECK(std::fabs(static_cast<double>(lin->exponent) - std::log(3.5) / std::log(3.0)) < 1e-12);
}
