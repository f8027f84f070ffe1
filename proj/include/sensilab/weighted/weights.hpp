#pragma once

#include <string>
#include <vector>

#include "sensilab/core/box.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/ratlp/rational.hpp"

namespace sensilab::weighted {

/// Positive exact weights on the non-zero symbols 1..k of an alphabet {0..k}.
class WeightFunction {
 public:
  WeightFunction() = default;
  /// weights[i - 1] is the weight of symbol i.
  explicit WeightFunction(std::vector<Rational> weights);
  static WeightFunction constant(int symbols, const Rational& value);
  /// w(i) = (a*i + b) * scale for i = 1..symbols.
  static WeightFunction affine(int symbols, const Rational& a, const Rational& b,
                               const Rational& scale = 1);

  int symbols() const noexcept { return static_cast<int>(weights_.size()); }
  int alphabet() const noexcept { return symbols() + 1; }
  const Rational& operator()(int symbol) const;
  const std::vector<Rational>& values() const noexcept { return weights_; }
  Rational max_weight() const;
  bool is_integral() const;
  WeightFunction ceiled() const;
  WeightFunction scaled(const Rational& factor) const;
  std::string to_string() const;

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  std::vector<Rational> weights_;
};

/// w(S): singleton {i} with i != 0 -> w(i); full set -> 0; proper set containing 0 ->
/// max weight of the excluded symbols. Other shapes throw UnsupportedError.
Rational set_weight(const SymbolSet& s, const WeightFunction& w);
Rational certificate_weight(const BoxCertificate& box, const WeightFunction& w);
inline int certificate_size(const BoxCertificate& box) { return box.size(); }

struct WeightedFunction {
  LazyFunction function;
  WeightFunction weight;

  WeightedFunction() = default;
  WeightedFunction(LazyFunction f, WeightFunction w);
};

}  // namespace sensilab::weighted
