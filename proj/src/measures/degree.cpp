#include "sensilab/measures/degree.hpp"

#include <bit>
#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab::measures {

std::int64_t Polynomial::evaluate(std::uint64_t x) const {
  std::int64_t v = 0;
  for (std::uint64_t s = 0; s < coeffs.size(); ++s)
    if ((s & x) == s) v += coeffs[s];
  return v;
}

Polynomial degree(const BooleanFunction& f) {
  if (f.arity() > 24) throw SizeError("degree: arity " + std::to_string(f.arity()) + " exceeds 24");
  Polynomial p;
  p.arity = f.arity();
  p.coeffs.resize(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) p.coeffs[x] = f(x) ? 1 : 0;
  for (int i = 0; i < f.arity(); ++i) {
    const std::uint64_t b = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < f.size(); ++s)
      if (s & b) p.coeffs[s] -= p.coeffs[s ^ b];
  }
  for (std::uint64_t s = 0; s < f.size(); ++s)
    if (p.coeffs[s] != 0) p.degree = std::max(p.degree, std::popcount(s));
  return p;
}

}  // namespace sensilab::measures
