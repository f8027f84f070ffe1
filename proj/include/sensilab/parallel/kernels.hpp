#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/lazy_function.hpp"

namespace sensilab::par {

/// Every kernel has a serial reference and an OpenMP version with identical output.
enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, n). Iterations must be independent.
template <typename Body>
void for_each_index(std::uint64_t n, Exec exec, Body&& body) {
  if (exec == Exec::parallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
  } else {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
  }
}

/// out[i] = fn(i), results stored in index order regardless of scheduling.
template <typename T, typename Fn>
std::vector<T> map_ordered(std::uint64_t n, Exec exec, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(n, exec, [&](std::uint64_t i) { out[i] = fn(i); });
  return out;
}

/// Bit table y -> in(y ^ mask) over 2^arity entries.
void xor_permute(std::span<const std::uint64_t> in, int arity, std::uint64_t mask,
                 std::span<std::uint64_t> out, Exec exec);

/// In place: t(T) becomes OR over S subset of T of t(S).
void zeta_or_subsets(std::span<std::uint64_t> table, int arity, Exec exec);

/// out(B) |= in(B minus i) for every B containing coordinate i.
void or_shift_up(std::span<const std::uint64_t> in, int arity, int i,
                 std::span<std::uint64_t> out, Exec exec);

/// Bit table of a Boolean-valued lazy function with Boolean inputs.
BooleanFunction materialize_boolean(const LazyFunction& f, Exec exec,
                                    const Budget& budget = default_budget());

/// Bit table of outer(inner(x_0), ..., inner(x_{c-1})) for Boolean outer and a
/// function inner over b-bit blocks with outputs in {0..2^a - 1} feeding a
/// groups of outer's bits (outer arity = copies * a).
BooleanFunction compose_bits(const BooleanFunction& outer, const std::vector<std::uint32_t>& inner,
                             int inner_bits, int out_bits, int copies, Exec exec,
                             const Budget& budget = default_budget());

}  // namespace sensilab::par
