#pragma once

#include <cstdint>
#include <vector>

#include "sensilab/core/boolean_function.hpp"

namespace sensilab::measures {

/// Multilinear representation f(x) = sum_S coeff[S] prod_{i in S} x_i.
struct Polynomial {
  int arity = 0;
  int degree = 0;
  std::vector<std::int64_t> coeffs;  // indexed by subset mask

  std::int64_t evaluate(std::uint64_t x) const;
};

/// Exact real degree by Moebius inversion over the subset lattice.
Polynomial degree(const BooleanFunction& f);

}  // namespace sensilab::measures
