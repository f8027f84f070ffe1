#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sensilab/core/budget.hpp"
#include "sensilab/core/encoding.hpp"
#include "sensilab/core/partial_assignment.hpp"

namespace sensilab {

/// Explicit truth table of f: {0..A-1}^n -> {0..G-1}. Symbol 0 of the input
/// alphabet is the distinguished null symbol. Immutable once built.
class DenseFunction {
 public:
  DenseFunction() = default;
  DenseFunction(std::string name, int arity, int input_alphabet, int output_alphabet,
                std::vector<Symbol> table);

  using Generator = std::function<Symbol(std::span<const Symbol>)>;
  static DenseFunction generate(std::string name, int arity, int input_alphabet,
                                int output_alphabet, const Generator& gen,
                                const Budget& budget = default_budget());

  const std::string& name() const noexcept { return name_; }
  int arity() const noexcept { return arity_; }
  int input_alphabet() const noexcept { return input_alphabet_; }
  int output_alphabet() const noexcept { return output_alphabet_; }
  std::uint64_t size() const noexcept { return table_.size(); }
  bool is_boolean() const noexcept { return input_alphabet_ == 2 && output_alphabet_ == 2; }
  const std::vector<Symbol>& table() const noexcept { return table_; }
  Radix radix() const { return Radix(arity_, input_alphabet_); }

  /// Validates the point and returns f(point).
  Symbol evaluate(std::span<const Symbol> point) const;
  Symbol at(std::uint64_t index) const { return table_.at(index); }
  std::uint64_t encode(std::span<const Symbol> point) const;
  std::vector<Symbol> decode(std::uint64_t index) const;

  DenseFunction restrict(const PartialAssignment& p) const;
  DenseFunction renamed(std::string name) const;

  friend bool operator==(const DenseFunction& a, const DenseFunction& b) {
    return a.arity_ == b.arity_ && a.input_alphabet_ == b.input_alphabet_ &&
           a.output_alphabet_ == b.output_alphabet_ && a.table_ == b.table_;
  }

 private:
  std::string name_;
  int arity_ = 0;
  int input_alphabet_ = 2;
  int output_alphabet_ = 2;
  std::vector<Symbol> table_ = std::vector<Symbol>(1, 0);
};

}  // namespace sensilab
