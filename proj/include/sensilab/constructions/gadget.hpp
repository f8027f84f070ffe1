#pragma once

#include <optional>

#include "sensilab/constructions/plane.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/dense_function.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/weighted/weights.hpp"

namespace sensilab::constructions {

/// Pointer function on the points of a plane: symbol i in [k] at point p
/// points to line slot_line[p][i - 1], 0 is null. Value 1 iff some line has
/// every one of its points pointing to it.
struct Gadget {
  ProjectivePlane plane;
  LazyFunction function;
  std::optional<DenseFunction> dense;
  /// One simple certificate per line fixing its points' pointers.
  CertificateCollection canonical;
};

LazyFunction gadget_function(const ProjectivePlane& plane);
CertificateCollection canonical_collection(const ProjectivePlane& plane);
/// Materializes when (k+1)^n fits the dense budget; the canonical collection
/// is verified exhaustively in that case and structurally otherwise.
Gadget goos_gadget(const ProjectivePlane& plane, const Budget& budget = default_budget());

/// w(i) = i * 2/(k+1), so that each canonical certificate weighs k.
weighted::WeightFunction fractional_weights(int k);
/// w(i) = i.
weighted::WeightFunction integer_weights(int k);

}  // namespace sensilab::constructions
