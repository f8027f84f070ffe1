#include "sensilab/constructions/gadget.hpp"

#include "sensilab/core/errors.hpp"
#include "sensilab/weighted/certify.hpp"

namespace sensilab::constructions {

namespace {

class GadgetNode final : public FunctionNode {
 public:
  explicit GadgetNode(const ProjectivePlane& plane) {
    arity = plane.n;
    input_alphabet = plane.k + 1;
    output_alphabet = 2;
    name = "gadget-q" + std::to_string(plane.q);
    for (int l = 0; l < plane.n; ++l) {
      std::vector<std::pair<int, Symbol>> need;
      for (int p : plane.lines[l]) need.emplace_back(p, static_cast<Symbol>(plane.slot_of(p, l) + 1));
      lines_.push_back(std::move(need));
    }
  }
  LazyKind kind() const override { return LazyKind::gadget; }
  Symbol eval(const Symbol* x) const override {
    for (const auto& line : lines_) {
      bool all = true;
      for (const auto& [p, s] : line)
        if (x[p] != s) {
          all = false;
          break;
        }
      if (all) return 1;
    }
    return 0;
  }

 private:
  std::vector<std::vector<std::pair<int, Symbol>>> lines_;
};

}  // namespace

LazyFunction gadget_function(const ProjectivePlane& plane) {
  return LazyFunction(std::make_shared<GadgetNode>(plane));
}

CertificateCollection canonical_collection(const ProjectivePlane& plane) {
  CertificateCollection c;
  c.label = "canonical-q" + std::to_string(plane.q);
  c.alphabet = plane.k + 1;
  for (int l = 0; l < plane.n; ++l) {
    BoxCertificate box(plane.n, c.alphabet);
    for (int p : plane.lines[l]) box.fix(p, static_cast<Symbol>(plane.slot_of(p, l) + 1));
    c.certificates.push_back(std::move(box));
  }
  return c;
}

Gadget goos_gadget(const ProjectivePlane& plane, const Budget& budget) {
  Gadget g{plane, gadget_function(plane), std::nullopt, canonical_collection(plane)};
  if (g.function.fits_dense(budget)) {
    g.dense = g.function.materialize(budget);
    const auto v = weighted::verify_collection(*g.dense, g.canonical, 1);
    if (!v.ok() || !v.simple)
      throw InvariantError("canonical collection failed verification: " + (v.failures.empty() ? "" : v.failures[0]));
  } else {
    std::string why;
    if (!weighted::pairwise_inconsistent(g.canonical.certificates, &why))
      throw InvariantError("canonical collection is ambiguous: " + why);
    for (const auto& box : g.canonical.certificates) {
      std::vector<Symbol> x(static_cast<std::size_t>(plane.n), 0);
      for (int p = 0; p < plane.n; ++p)
        if (box[p].count() == 1) x[p] = static_cast<Symbol>(box[p].only());
      if (g.function.evaluate(x) != 1) throw InvariantError("canonical certificate does not force 1");
    }
  }
  return g;
}

weighted::WeightFunction fractional_weights(int k) {
  return weighted::WeightFunction::affine(k, 1, 0, Rational(2, k + 1));
}

weighted::WeightFunction integer_weights(int k) { return weighted::WeightFunction::affine(k, 1, 0); }

}  // namespace sensilab::constructions
