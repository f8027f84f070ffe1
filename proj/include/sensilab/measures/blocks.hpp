#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/partial_assignment.hpp"
#include "sensilab/ratlp/lp.hpp"

namespace sensilab::measures {

/// Block B (bit mask over coordinates) with f(x^B) != f(x).
struct SensitiveBlock {
  std::uint32_t block = 0;
  std::uint64_t base = 0;
  bool minimal = false;

  int size() const { return __builtin_popcount(block); }
  friend bool operator==(const SensitiveBlock&, const SensitiveBlock&) = default;
};

/// One-sided maxima of a pointwise measure: overall, over f^-1(0), over f^-1(1).
/// A side with no inputs reports 0.
template <typename T>
struct SideProfile {
  T all{};
  T zero{};
  T one{};
  std::uint64_t argmax = 0;
};

/// Bit-mask list of every sensitive block of x (ascending by mask).
std::vector<std::uint32_t> sensitive_blocks(const BooleanFunction& f, std::uint64_t x);

/// Inclusion-minimal sensitive blocks of x, sorted by (size, mask).
std::vector<SensitiveBlock> minimal_sensitive_blocks(const BooleanFunction& f, std::uint64_t x,
                                                     const Budget& budget = default_budget());
std::vector<std::uint32_t> minimal_block_masks(const BooleanFunction& f, std::uint64_t x,
                                               const Budget& budget = default_budget());

/// Maximum number of pairwise-disjoint sets in `family` (exact branch and bound).
std::vector<std::uint32_t> max_disjoint_packing(const std::vector<std::uint32_t>& family, int universe);

/// Minimum-cardinality set meeting every member of `family` (exact branch and bound).
std::uint32_t min_hitting_set(const std::vector<std::uint32_t>& family, int universe);

// ---- sensitivity ---------------------------------------------------------

int sensitivity(const BooleanFunction& f, std::uint64_t x);
SideProfile<int> sensitivity_profile(const BooleanFunction& f);

// ---- block sensitivity -----------------------------------------------------

struct BlockPacking {
  int value = 0;
  std::vector<std::uint32_t> blocks;
};

/// bs_x(f), or bs_(k),x(f) when max_block_size is set.
BlockPacking block_sensitivity(const BooleanFunction& f, std::uint64_t x,
                               std::optional<int> max_block_size = std::nullopt,
                               const Budget& budget = default_budget());
SideProfile<int> block_sensitivity_profile(const BooleanFunction& f,
                                           std::optional<int> max_block_size = std::nullopt,
                                           const Budget& budget = default_budget());

// ---- fractional block sensitivity -------------------------------------------

/// RC_x(f) with its packing weights on minimal blocks and the hitting weights
/// on coordinates; both sides verified equal.
struct FractionalBlockSensitivity {
  Rational value;
  std::vector<std::uint32_t> blocks;
  std::vector<Rational> block_weights;
  std::vector<Rational> coordinate_weights;
};

lp::LinearProgram packing_program(const std::vector<std::uint32_t>& blocks, int universe);
lp::LinearProgram hitting_program(const std::vector<std::uint32_t>& blocks, int universe);

FractionalBlockSensitivity fractional_block_sensitivity(const BooleanFunction& f, std::uint64_t x,
                                                        const Budget& budget = default_budget());
SideProfile<Rational> fractional_block_sensitivity_profile(const BooleanFunction& f,
                                                           const Budget& budget = default_budget());

// ---- certificate complexity ---------------------------------------------------

struct CertificateResult {
  int size = 0;
  PartialAssignment certificate;
};

/// Smallest certificate of x, as a minimum hitting set of its minimal sensitive blocks.
CertificateResult certificate_complexity(const BooleanFunction& f, std::uint64_t x,
                                         const Budget& budget = default_budget());
SideProfile<int> certificate_profile(const BooleanFunction& f,
                                     const Budget& budget = default_budget());

/// C_x(f) for large arity (up to the bit-table limit), via the largest
/// coordinate set T such that no sensitive block of x lies inside T.
CertificateResult certificate_complexity_large(const BooleanFunction& f, std::uint64_t x);

}  // namespace sensilab::measures
