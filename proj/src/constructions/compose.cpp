#include "sensilab/constructions/compose.hpp"

#include "sensilab/core/errors.hpp"

namespace sensilab::constructions {

int pair_symbol(int s, int i, int k0) { return 1 + (s - 1) * k0 + (i - 1); }

Extension extend_output(const weighted::WeightedFunction& wf, const weighted::VerifiedCollection& u,
                        int sigma0, const weighted::WeightFunction& w0) {
  if (!u.ok() || u.target != 1)
    throw PreconditionError("output extension needs a verified unambiguous covering 1-collection");
  if (!u.simple) throw PreconditionError("output extension needs simple certificates");
  if (w0.symbols() != sigma0) throw InputError("w0 must weigh exactly the symbols of Sigma_0");
  const int sigma = wf.weight.symbols();
  Extension ext;
  ext.sigma0 = sigma0;
  ext.w0 = w0;
  std::vector<Rational> tw(static_cast<std::size_t>(sigma * sigma0));
  for (int s = 1; s <= sigma; ++s)
    for (int i = 1; i <= sigma0; ++i) tw[pair_symbol(s, i, sigma0) - 1] = wf.weight(s) * w0(i);
  const std::string name = "tilde(" + wf.function.name() + ")";
  ext.tilde = weighted::WeightedFunction(LazyFunction::tilde(wf.function, u.collection.certificates, sigma0, name),
                                         weighted::WeightFunction(std::move(tw)));
  const int alphabet = 1 + sigma * sigma0;
  for (int i = 1; i <= sigma0; ++i) {
    CertificateCollection c;
    c.label = name + "-output-" + std::to_string(i);
    c.alphabet = alphabet;
    for (const auto& t : u.collection.certificates) {
      BoxCertificate box(t.arity(), alphabet);
      for (int j = 0; j < t.arity(); ++j)
        if (!t[j].is_full(t.alphabet())) box.fix(j, static_cast<Symbol>(pair_symbol(t[j].only(), i, sigma0)));
      c.certificates.push_back(std::move(box));
    }
    ext.by_output.push_back(std::move(c));
  }
  return ext;
}

CertificateCollection splice(const CertificateCollection& outer,
                             const std::vector<CertificateCollection>& inner_by_output, int inner_arity,
                             int inner_alphabet, const std::string& label) {
  CertificateCollection out;
  out.label = label;
  out.alphabet = inner_alphabet;
  for (const auto& c : outer.certificates) {
    if (!c.is_simple()) throw PreconditionError("splicing needs simple outer certificates");
    std::vector<std::pair<int, const CertificateCollection*>> fixed;
    for (int j = 0; j < c.arity(); ++j) {
      if (c[j].is_full(c.alphabet())) continue;
      const int sym = c[j].only();
      if (sym < 1 || sym > static_cast<int>(inner_by_output.size()))
        throw InputError("no inner collection for symbol " + std::to_string(sym));
      fixed.emplace_back(j, &inner_by_output[sym - 1]);
    }
    std::vector<std::size_t> choice(fixed.size(), 0);
    const std::vector<SymbolSet> full(static_cast<std::size_t>(c.arity() * inner_arity), SymbolSet::full(inner_alphabet));
    for (;;) {
      std::vector<SymbolSet> sets = full;
      for (std::size_t f = 0; f < fixed.size(); ++f) {
        const auto& inner = fixed[f].second->certificates.at(choice[f]);
        if (inner.arity() != inner_arity || inner.alphabet() != inner_alphabet)
          throw InputError("inner certificate shape does not match");
        for (int t = 0; t < inner_arity; ++t) sets[fixed[f].first * inner_arity + t] = inner[t];
      }
      out.certificates.emplace_back(inner_alphabet, std::move(sets));
      std::size_t f = 0;
      for (; f < fixed.size(); ++f) {
        if (++choice[f] < fixed[f].second->certificates.size()) break;
        choice[f] = 0;
      }
      if (f == fixed.size()) break;
    }
  }
  return out;
}

Composition compose_weighted(const LazyFunction& h, const CertificateCollection& h_collection, const Extension& ext) {
  const auto& inner = ext.tilde.function;
  if (inner.output_alphabet() != h.input_alphabet())
    throw InputError("extension output alphabet " + std::to_string(inner.output_alphabet()) +
                     " does not match outer input alphabet " + std::to_string(h.input_alphabet()));
  const std::string name = h.name() + "o" + inner.name();
  Composition comp;
  comp.function = weighted::WeightedFunction(LazyFunction::compose_copies(h, inner, LazyKind::outer_compose, name),
                                             ext.tilde.weight);
  comp.collection = splice(h_collection, ext.by_output, inner.arity(), inner.input_alphabet(), name + "-collection");
  return comp;
}

}  // namespace sensilab::constructions
