#include "sensilab/core/boolean_function.hpp"

#include <bit>
#include <string>

#include "sensilab/core/dense_function.hpp"
#include "sensilab/core/errors.hpp"

namespace sensilab {
namespace {

std::size_t word_count(int arity) {
  return arity <= 6 ? 1 : (std::size_t{1} << (arity - 6));
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BooleanFunction::BooleanFunction(int arity, std::string name)
    : arity_(arity), name_(std::move(name)) {
  if (arity < 0 || arity > kMaxArity)
    throw SizeError("Boolean arity " + std::to_string(arity) + " outside [0, " +
                    std::to_string(kMaxArity) + "]");
  words_.assign(word_count(arity), 0);
}

BooleanFunction BooleanFunction::from_bits(int arity, const std::vector<bool>& table,
                                           std::string name) {
  BooleanFunction f(arity, std::move(name));
  if (table.size() != f.size())
    throw InputError("truth table has " + std::to_string(table.size()) + " entries, expected " +
                     std::to_string(f.size()));
  for (std::uint64_t x = 0; x < f.size(); ++x) f.set(x, table[x]);
  return f;
}

BooleanFunction BooleanFunction::from_predicate(int arity,
                                                const std::function<bool(std::uint64_t)>& pred,
                                                std::string name) {
  BooleanFunction f(arity, std::move(name));
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (pred(x)) f.set(x, true);
  return f;
}

BooleanFunction BooleanFunction::from_hex(int arity, std::string_view hex, std::string name) {
  BooleanFunction f(arity, std::move(name));
  if (hex.empty()) throw InputError("empty hex table");
  const std::uint64_t bits = f.size();
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const int v = hex_value(hex[hex.size() - 1 - k]);
    if (v < 0) throw InputError(std::string("bad hex digit '") + hex[hex.size() - 1 - k] + "'");
    for (int b = 0; b < 4; ++b) {
      if (((v >> b) & 1) == 0) continue;
      const std::uint64_t x = 4 * k + static_cast<std::uint64_t>(b);
      if (x >= bits) throw InputError("hex table has bits beyond 2^arity");
      f.set(x, true);
    }
  }
  return f;
}

BooleanFunction BooleanFunction::from_dense(const DenseFunction& d) {
  if (!d.is_boolean()) throw UnsupportedError("function '" + d.name() + "' is not Boolean");
  BooleanFunction f(d.arity(), d.name());
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (d.at(x) != 0) f.set(x, true);
  return f;
}

std::uint64_t BooleanFunction::count_ones() const noexcept {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool BooleanFunction::is_constant() const noexcept {
  const auto ones = count_ones();
  return ones == 0 || ones == size();
}

void BooleanFunction::mask_tail() noexcept {
  if (arity_ < 6) words_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << arity_)) - 1;
}

BooleanFunction BooleanFunction::negated() const {
  BooleanFunction g = *this;
  for (auto& w : g.words_) w = ~w;
  g.mask_tail();
  if (!name_.empty()) g.name_ = "not-" + name_;
  return g;
}

BooleanFunction BooleanFunction::restrict(const PartialAssignment& p) const {
  if (p.arity() != arity_) throw InputError("restriction arity mismatch");
  std::vector<int> free;
  std::uint64_t base = 0;
  for (int i = 0; i < arity_; ++i) {
    if (p.is_free(i)) free.push_back(i);
    else if (p[i] == 1) base |= std::uint64_t{1} << i;
    else if (p[i] != 0) throw InputError("non-Boolean restriction value");
  }
  BooleanFunction g(static_cast<int>(free.size()), name_.empty() ? "" : name_ + "|" + p.to_string());
  for (std::uint64_t y = 0; y < g.size(); ++y) {
    std::uint64_t x = base;
    for (std::size_t j = 0; j < free.size(); ++j)
      if ((y >> j) & 1u) x |= std::uint64_t{1} << free[j];
    if ((*this)(x)) g.set(y, true);
  }
  return g;
}

DenseFunction BooleanFunction::to_dense() const {
  std::vector<Symbol> table(size());
  for (std::uint64_t x = 0; x < size(); ++x) table[x] = (*this)(x) ? 1 : 0;
  return DenseFunction(name_, arity_, 2, 2, std::move(table));
}

std::string BooleanFunction::to_hex() const {
  const std::uint64_t digits = size() <= 4 ? 1 : size() / 4;
  std::string s(digits, '0');
  for (std::uint64_t k = 0; k < digits; ++k) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::uint64_t x = 4 * k + static_cast<std::uint64_t>(b);
      if (x < size() && (*this)(x)) v |= 1 << b;
    }
    s[digits - 1 - k] = "0123456789abcdef"[v];
  }
  return s;
}

}  // namespace sensilab
