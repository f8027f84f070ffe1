#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sensilab {

using Symbol = std::uint8_t;
inline constexpr int kMaxAlphabet = 256;

/// base^exp, or throws SizeError when the result exceeds 2^62.
std::uint64_t checked_power(std::uint64_t base, int exp);

/// Like checked_power but returns false instead of throwing.
bool try_power(std::uint64_t base, int exp, std::uint64_t& out);

/// Mixed-radix indexing of points in {0..base-1}^arity.
/// Coordinate 0 is the least significant digit.
class Radix {
 public:
  Radix(int arity, int base);

  int arity() const noexcept { return arity_; }
  int base() const noexcept { return base_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t encode(std::span<const Symbol> point) const;
  void decode(std::uint64_t index, std::span<Symbol> out) const;
  std::vector<Symbol> decode(std::uint64_t index) const;

 private:
  int arity_;
  int base_;
  std::uint64_t size_;
};

/// Advances an odometer in {0..base-1}^n (coordinate 0 fastest).
/// Returns false after wrapping past the last point.
inline bool next_point(std::span<Symbol> point, int base) {
  for (auto& digit : point) {
    if (++digit < base) return true;
    digit = 0;
  }
  return false;
}

}  // namespace sensilab
