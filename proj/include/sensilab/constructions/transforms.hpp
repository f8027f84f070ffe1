#pragma once

#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/core/partial_assignment.hpp"
#include "sensilab/weighted/weights.hpp"

namespace sensilab::constructions {

weighted::WeightedFunction round_weights(const weighted::WeightedFunction& wf);

/// Disjoint subcubes of {0,1}^bits whose union is `codes` (a set of b-bit codes).
std::vector<Cube> subcube_decomposition(const std::vector<unsigned>& codes, int bits);

/// Translates a box collection over alphabet A to Boolean partial assignments
/// on ceil(log2 A) bits per coordinate under the clamped surjection. Each box
/// becomes the disjoint union of the product subcubes of its coordinate preimages.
std::vector<PartialAssignment> booleanize_collection(const CertificateCollection& c);
/// Bit block of a symbol under the code (least significant bit first); exact preimage when A is a power of 2.
std::vector<int> symbol_bits(int symbol, int alphabet);

struct Desensitized {
  BooleanFunction function;
  std::vector<PartialAssignment> collection;  // p^r for each p in U
  int repetitions = 3;
};

/// f'(x_0 ... x_{r-1}) = 1 iff every copy x_j is a 1-input of f whose unique
/// member of U is the same p. Copy j occupies coordinates j*n .. j*n + n - 1.
/// Throws PreconditionError when U is not an unambiguous covering 1-collection of f.
Desensitized desensitize(const BooleanFunction& f, const std::vector<PartialAssignment>& u,
                         int repetitions = 3, const Budget& budget = default_budget());

/// outer(inner(x_0), ..., inner(x_{c-1})) as a dense table, c = outer.arity().
BooleanFunction outer_compose(const BooleanFunction& outer, const BooleanFunction& inner,
                              const Budget& budget = default_budget());

inline BooleanFunction or_function(int n) {
  return BooleanFunction::from_predicate(n, [](std::uint64_t x) { return x != 0; },
                                         "or" + std::to_string(n));
}

struct TightFamily {
  BooleanFunction function;
  std::vector<PartialAssignment> collection;
  int k = 0;
};

/// n = 2k+1 bits: f(x) = 1 iff some cyclic shift of 0^k 1 *^k is contained in x.
TightFamily tight_family(int k, const Budget& budget = default_budget());

}  // namespace sensilab::constructions
