#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensilab/core/encoding.hpp"

namespace sensilab {

/// Subcube of {0,1}^n for n <= 32: coordinates in `fixed` take the
/// corresponding bit of `values`; the rest are free.
struct Cube {
  std::uint32_t fixed = 0;
  std::uint32_t values = 0;

  int size() const noexcept { return __builtin_popcount(fixed); }
  bool contains(std::uint64_t x) const noexcept {
    return (static_cast<std::uint32_t>(x) & fixed) == values;
  }
  bool consistent_with(const Cube& o) const noexcept {
    return ((values ^ o.values) & fixed & o.fixed) == 0;
  }
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// A string over {symbols, *}. In the Boolean case this is p in {0,1,*}^n.
class PartialAssignment {
 public:
  static constexpr int kFree = -1;

  PartialAssignment() = default;
  explicit PartialAssignment(int arity);
  explicit PartialAssignment(std::vector<int> entries);
  /// Parses "01*"-style strings; digits 0-9 and '*' are accepted.
  static PartialAssignment parse(std::string_view text);
  static PartialAssignment from_cube(const Cube& cube, int arity);

  int arity() const noexcept { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_.at(static_cast<std::size_t>(i)); }
  void set(int i, int value);
  void clear(int i) { set(i, kFree); }
  bool is_free(int i) const { return (*this)[i] == kFree; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  /// |p|: number of fixed coordinates.
  int size() const noexcept;
  std::vector<int> support() const;

  bool contains(std::span<const Symbol> point) const;
  /// Boolean points are bit-encoded with coordinate 0 least significant.
  bool contains_bits(std::uint64_t x) const;
  bool consistent_with(const PartialAssignment& other) const;
  /// p u q, or nullopt when p and q are inconsistent.
  std::optional<PartialAssignment> merge(const PartialAssignment& other) const;

  /// Only valid for Boolean assignments of arity <= 32.
  Cube to_cube() const;
  std::string to_string() const;

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
  friend auto operator<=>(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  std::vector<int> entries_;
};

}  // namespace sensilab
