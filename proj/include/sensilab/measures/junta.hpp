#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/partial_assignment.hpp"
#include "sensilab/ratlp/lp.hpp"

namespace sensilab::measures {

/// q(x) = sum over p contained in x of w_p, with positive rational weights.
struct ConicalJunta {
  int arity = 0;
  Rational epsilon;
  std::vector<std::pair<PartialAssignment, Rational>> terms;

  Rational evaluate(std::uint64_t x) const;
  int degree() const;
  /// max_x sum over p contained in x of w_p |p|.
  Rational average_degree() const;
  /// q in [0, eps] on f^-1(0), [1 - eps, 1] on f^-1(1).
  bool approximates(const BooleanFunction& f) const;
};

enum class JuntaVariant { exact, average };
/// Side 1 represents f itself, side 0 represents its negation; kMinSide takes the smaller.
inline constexpr int kMinSide = -1;

struct JuntaDegreeResult {
  Rational value;
  int side = 1;
  ConicalJunta junta;
};

/// Terms indexed in base 3 (digit 0/1 fixed, 2 free), coordinate 0 least significant.
PartialAssignment term_of_index(std::uint64_t index, int arity);

/// The epsilon-approximation program over all terms of size <= max_size.
/// With `average` set, one extra variable t (last) is minimized subject to
/// sum over p contained in x of w_p |p| <= t for every x.
lp::LinearProgram junta_program(const BooleanFunction& f, const Rational& epsilon, int max_size,
                                bool average);

/// deg+ (exact variant: least d for which the size-<=d program is feasible)
/// or avdeg+ (average variant: optimum of the averaged program). epsilon must lie in [0, 1/4).
JuntaDegreeResult conical_junta_degree(const BooleanFunction& f, JuntaVariant variant, int side,
                                       const Rational& epsilon,
                                       const Budget& budget = default_budget());

struct ApproxDegreeResult {
  int degree = 0;
  /// Multilinear coefficients indexed by subset mask.
  std::vector<Rational> coeffs;
};

/// Least d admitting a real multilinear q of degree <= d with q in [0, eps] on
/// f^-1(0) and [1 - eps, 1] on f^-1(1). epsilon must lie in [0, 1/2).
ApproxDegreeResult approx_degree(const BooleanFunction& f, const Rational& epsilon,
                                 const Budget& budget = default_budget());

}  // namespace sensilab::measures
