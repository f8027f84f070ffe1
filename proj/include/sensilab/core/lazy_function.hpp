#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/dense_function.hpp"

namespace sensilab {

enum class LazyKind { dense, gadget, outer_compose, tilde_extension, realizer_compose, booleanized };

const char* to_string(LazyKind kind);

/// Internal evaluation node. `eval` receives a validated point.
class FunctionNode {
 public:
  virtual ~FunctionNode() = default;
  virtual LazyKind kind() const = 0;
  virtual Symbol eval(const Symbol* point) const = 0;

  int arity = 0;
  int input_alphabet = 2;
  int output_alphabet = 2;
  std::string name;
};

/// A function given by a composition tree; evaluated on demand.
///
/// Needed when the truth table is too large to store. Whenever the dense
/// table fits the budget, `materialize` agrees with `evaluate` pointwise.
class LazyFunction {
 public:
  LazyFunction() = default;
  explicit LazyFunction(std::shared_ptr<const FunctionNode> node);

  static LazyFunction dense(DenseFunction f);
  static LazyFunction dense(const BooleanFunction& f);
  /// outer(inner_0(x_0), ..., inner_{c-1}(x_{c-1})) with the x_j concatenated.
  /// All inners share one input alphabet; their output alphabet is outer's input alphabet.
  static LazyFunction compose(LazyFunction outer, std::vector<LazyFunction> inners,
                              LazyKind kind = LazyKind::outer_compose, std::string name = {});
  /// outer applied to `copies` independent copies of inner.
  static LazyFunction compose_copies(LazyFunction outer, const LazyFunction& inner,
                                     LazyKind kind = LazyKind::outer_compose,
                                     std::string name = {});
  /// Replaces each coordinate by ceil(log2 A) bits, least significant first.
  /// Codes >= A map to symbol A-1.
  static LazyFunction booleanize(LazyFunction f, std::string name = {});
  /// Output-alphabet extension of a Boolean-valued f over {0} u Sigma using the
  /// unambiguous simple 1-certificate collection `certs` and Sigma_0 = [sigma0].
  /// Input symbol 1 + (s-1)*sigma0 + (i-1) encodes the pair (s, i).
  static LazyFunction tilde(LazyFunction f, std::vector<BoxCertificate> certs, int sigma0,
                            std::string name = {});

  bool valid() const noexcept { return node_ != nullptr; }
  LazyKind kind() const { return node_->kind(); }
  const std::string& name() const { return node_->name; }
  int arity() const { return node_->arity; }
  int input_alphabet() const { return node_->input_alphabet; }
  int output_alphabet() const { return node_->output_alphabet; }
  bool is_boolean() const { return input_alphabet() == 2 && output_alphabet() == 2; }
  /// Number of points, or nullopt when it exceeds 2^62.
  std::optional<std::uint64_t> domain_size() const;
  const FunctionNode& node() const { return *node_; }
  std::shared_ptr<const FunctionNode> node_ptr() const { return node_; }
  std::vector<LazyFunction> children() const;
  /// Dense table of a `dense` node.
  const DenseFunction* as_dense() const;

  Symbol evaluate(std::span<const Symbol> point) const;
  /// Unchecked evaluation for hot loops.
  Symbol evaluate_unchecked(const Symbol* point) const { return node_->eval(point); }

  bool fits_dense(const Budget& budget = default_budget()) const;
  DenseFunction materialize(const Budget& budget = default_budget()) const;
  BooleanFunction materialize_boolean(const Budget& budget = default_budget()) const;

 private:
  std::shared_ptr<const FunctionNode> node_;
};

int bits_per_symbol(int alphabet);
/// The clamped surjection {0,1}^b -> {0..A-1}.
inline Symbol decode_code(unsigned code, int alphabet) {
  return static_cast<Symbol>(code < static_cast<unsigned>(alphabet) ? code : alphabet - 1);
}

}  // namespace sensilab
