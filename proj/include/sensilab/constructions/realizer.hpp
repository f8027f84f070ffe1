#pragma once

#include <vector>

#include "sensilab/core/box.hpp"
#include "sensilab/core/dense_function.hpp"
#include "sensilab/weighted/weights.hpp"

namespace sensilab::constructions {

struct Realizer {
  DenseFunction function;
  std::vector<int> weights;  // weights[i - 1] = w(i)
  /// collections[i - 1]: certificates 0^(t-1) i for t = 1..w(i), certifying g = i.
  std::vector<CertificateCollection> collections;
};

/// g_w over ({0} u [k])^m with m = max weight: g_w(x) = i iff i is the first
/// non-zero symbol of x and it occurs within the first w(i) coordinates.
/// Throws InputError for non-integral or non-positive weights.
Realizer weight_realizer(const weighted::WeightFunction& w);

}  // namespace sensilab::constructions
