#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sensilab/core/partial_assignment.hpp"

namespace sensilab {

class DenseFunction;

/// Dense Boolean function f: {0,1}^n -> {0,1} stored as a bit vector.
/// Bit x of the table is f(x) where bit i of x is coordinate i.
class BooleanFunction {
 public:
  static constexpr int kMaxArity = 30;

  BooleanFunction() = default;
  /// The constant-0 function on `arity` bits.
  explicit BooleanFunction(int arity, std::string name = {});

  static BooleanFunction from_bits(int arity, const std::vector<bool>& table,
                                   std::string name = {});
  static BooleanFunction from_predicate(int arity,
                                        const std::function<bool(std::uint64_t)>& pred,
                                        std::string name = {});
  /// Hex string whose value has bit i = f(i) (last hex digit holds bits 0-3).
  static BooleanFunction from_hex(int arity, std::string_view hex, std::string name = {});
  /// Requires input and output alphabets of size 2.
  static BooleanFunction from_dense(const DenseFunction& f);

  int arity() const noexcept { return arity_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << arity_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool operator()(std::uint64_t x) const noexcept {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void set(std::uint64_t x, bool value) noexcept {
    const auto bit = std::uint64_t{1} << (x & 63);
    if (value) words_[x >> 6] |= bit; else words_[x >> 6] &= ~bit;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> mutable_words() noexcept { return words_; }

  std::uint64_t count_ones() const noexcept;
  bool is_constant() const noexcept;
  BooleanFunction negated() const;
  /// Subfunction on the free coordinates of `p`, in increasing coordinate order.
  BooleanFunction restrict(const PartialAssignment& p) const;

  DenseFunction to_dense() const;
  std::string to_hex() const;

  friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) {
    return a.arity_ == b.arity_ && a.words_ == b.words_;
  }

 private:
  void mask_tail() noexcept;

  int arity_ = 0;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
  std::string name_;
};

}  // namespace sensilab
