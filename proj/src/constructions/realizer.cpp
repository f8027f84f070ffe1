#include "sensilab/constructions/realizer.hpp"

#include "sensilab/core/errors.hpp"
#include "sensilab/weighted/certify.hpp"

namespace sensilab::constructions {

Realizer weight_realizer(const weighted::WeightFunction& w) {
  if (!w.is_integral()) throw InputError("weight realizer needs integer weights (round first): " + w.to_string());
  Realizer r;
  int m = 0;
  for (const auto& x : w.values()) {
    r.weights.push_back(static_cast<int>(x.get_num().get_si()));
    m = std::max(m, r.weights.back());
  }
  const int alphabet = w.alphabet();
  r.function = DenseFunction::generate(
      "realizer" + w.to_string(), m, alphabet, alphabet, [&](std::span<const Symbol> x) -> Symbol {
        for (int t = 0; t < m; ++t)
          if (x[t] != 0) return t < r.weights[x[t] - 1] ? x[t] : 0;
        return 0;
      });
  for (int i = 1; i < alphabet; ++i) {
    CertificateCollection c;
    c.label = "realizer-symbol-" + std::to_string(i);
    c.alphabet = alphabet;
    for (int t = 0; t < r.weights[i - 1]; ++t) {
      BoxCertificate box(m, alphabet);
      for (int j = 0; j < t; ++j) box.fix(j, 0);
      box.fix(t, static_cast<Symbol>(i));
      c.certificates.push_back(std::move(box));
    }
    const auto v = weighted::verify_collection(r.function, c, i);
    if (!v.ok() || v.max_size != r.weights[i - 1])
      throw InvariantError("realizer collection for symbol " + std::to_string(i) + " failed verification");
    r.collections.push_back(std::move(c));
  }
  return r;
}

}  // namespace sensilab::constructions
