#include "sensilab/weighted/weights.hpp"

#include <algorithm>

#include "sensilab/core/errors.hpp"

namespace sensilab::weighted {

WeightFunction::WeightFunction(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("a weight function needs at least one symbol");
  if (static_cast<int>(weights_.size()) >= kMaxAlphabet) throw InputError("too many symbols");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weights_[i].canonicalize();
    if (weights_[i] <= 0)
      throw InputError("weight of symbol " + std::to_string(i + 1) + " must be positive");
  }
}

WeightFunction WeightFunction::constant(int symbols, const Rational& value) {
  return WeightFunction(std::vector<Rational>(static_cast<std::size_t>(std::max(symbols, 0)), value));
}

WeightFunction WeightFunction::affine(int symbols, const Rational& a, const Rational& b,
                                      const Rational& scale) {
  std::vector<Rational> w;
  for (int i = 1; i <= symbols; ++i) w.push_back((a * i + b) * scale);
  return WeightFunction(std::move(w));
}

const Rational& WeightFunction::operator()(int symbol) const {
  if (symbol < 1 || symbol > symbols())
    throw InputError("symbol " + std::to_string(symbol) + " has no weight");
  return weights_[static_cast<std::size_t>(symbol - 1)];
}

Rational WeightFunction::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

bool WeightFunction::is_integral() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const Rational& r) { return r.get_den() == 1; });
}

WeightFunction WeightFunction::ceiled() const {
  std::vector<Rational> w;
  for (const auto& r : weights_) w.push_back(ceil(r));
  return WeightFunction(std::move(w));
}

WeightFunction WeightFunction::scaled(const Rational& factor) const {
  std::vector<Rational> w;
  for (const auto& r : weights_) w.push_back(r * factor);
  return WeightFunction(std::move(w));
}

std::string WeightFunction::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out += ", ";
    out += sensilab::to_string(weights_[i]);
  }
  return out + "]";
}

Rational set_weight(const SymbolSet& s, const WeightFunction& w) {
  const int alphabet = w.alphabet();
  for (int e : s.elements())
    if (e >= alphabet) throw InputError("set contains symbol " + std::to_string(e) + " outside the alphabet");
  if (s.empty()) throw InputError("empty set has no weight");
  if (s.is_full(alphabet)) return 0;
  if (s.contains(0)) {
    Rational best = 0;
    for (int i = 1; i < alphabet; ++i)
      if (!s.contains(i) && w(i) > best) best = w(i);
    return best;
  }
  if (s.count() == 1) return w(s.only());
  throw UnsupportedError("no weight is defined for a set of several non-zero symbols");
}

Rational certificate_weight(const BoxCertificate& box, const WeightFunction& w) {
  if (box.alphabet() != w.alphabet())
    throw InputError("certificate alphabet " + std::to_string(box.alphabet()) +
                     " does not match weight alphabet " + std::to_string(w.alphabet()));
  Rational total = 0;
  for (const auto& s : box.sets()) total += set_weight(s, w);
  return total;
}

WeightedFunction::WeightedFunction(LazyFunction f, WeightFunction w)
    : function(std::move(f)), weight(std::move(w)) {
  if (function.valid() && function.input_alphabet() != weight.alphabet())
    throw InputError("function alphabet " + std::to_string(function.input_alphabet()) +
                     " does not match weight alphabet " + std::to_string(weight.alphabet()));
}

}  // namespace sensilab::weighted
