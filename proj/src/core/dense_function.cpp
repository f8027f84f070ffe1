#include "sensilab/core/dense_function.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {

DenseFunction::DenseFunction(std::string name, int arity, int input_alphabet, int output_alphabet,
                             std::vector<Symbol> table)
    : name_(std::move(name)),
      arity_(arity),
      input_alphabet_(input_alphabet),
      output_alphabet_(output_alphabet),
      table_(std::move(table)) {
  if (output_alphabet < 1 || output_alphabet > kMaxAlphabet)
    throw InputError("output alphabet size must be in [1, 256]");
  const Radix r(arity, input_alphabet);
  if (table_.size() != r.size())
    throw InputError("table has " + std::to_string(table_.size()) + " entries, expected " +
                     std::to_string(r.size()));
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= output_alphabet)
      throw InputError("table entry " + std::to_string(i) + " is " + std::to_string(table_[i]) +
                       ", outside the output alphabet");
}

DenseFunction DenseFunction::generate(std::string name, int arity, int input_alphabet,
                                      int output_alphabet, const Generator& gen,
                                      const Budget& budget) {
  const Radix r(arity, input_alphabet);
  if (r.size() > budget.dense_entries)
    throw SizeError("dense table of " + std::to_string(r.size()) + " entries exceeds the limit of " +
                    std::to_string(budget.dense_entries));
  std::vector<Symbol> table(r.size());
  std::vector<Symbol> point(static_cast<std::size_t>(arity), 0);
  for (std::uint64_t i = 0; i < r.size(); ++i) {
    table[i] = gen(point);
    next_point(point, input_alphabet);
  }
  return DenseFunction(std::move(name), arity, input_alphabet, output_alphabet, std::move(table));
}

Symbol DenseFunction::evaluate(std::span<const Symbol> point) const {
  return table_[radix().encode(point)];
}

std::uint64_t DenseFunction::encode(std::span<const Symbol> point) const {
  return radix().encode(point);
}

std::vector<Symbol> DenseFunction::decode(std::uint64_t index) const {
  return radix().decode(index);
}

DenseFunction DenseFunction::restrict(const PartialAssignment& p) const {
  if (p.arity() != arity_) throw InputError("restriction arity mismatch");
  std::vector<int> free;
  std::vector<Symbol> point(static_cast<std::size_t>(arity_), 0);
  for (int i = 0; i < arity_; ++i) {
    if (p.is_free(i)) free.push_back(i);
    else if (p[i] >= input_alphabet_) throw InputError("restriction value out of range");
    else point[i] = static_cast<Symbol>(p[i]);
  }
  const Radix sub(static_cast<int>(free.size()), input_alphabet_);
  const Radix full = radix();
  std::vector<Symbol> table(sub.size());
  std::vector<Symbol> y(free.size(), 0);
  for (std::uint64_t j = 0; j < sub.size(); ++j) {
    for (std::size_t t = 0; t < free.size(); ++t) point[free[t]] = y[t];
    table[j] = table_[full.encode(point)];
    next_point(y, input_alphabet_);
  }
  return DenseFunction(name_.empty() ? "" : name_ + "|" + p.to_string(),
                       static_cast<int>(free.size()), input_alphabet_, output_alphabet_,
                       std::move(table));
}

DenseFunction DenseFunction::renamed(std::string name) const {
  DenseFunction g = *this;
  g.name_ = std::move(name);
  return g;
}

}  // namespace sensilab
