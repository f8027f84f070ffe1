#include "sensilab/core/encoding.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {

bool try_power(std::uint64_t base, int exp, std::uint64_t& out) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kLimit / base) return false;
    r *= base;
  }
  out = r;
  return true;
}

std::uint64_t checked_power(std::uint64_t base, int exp) {
  std::uint64_t r = 0;
  if (!try_power(base, exp, r))
    throw SizeError(std::to_string(base) + "^" + std::to_string(exp) + " overflows the index range");
  return r;
}

Radix::Radix(int arity, int base) : arity_(arity), base_(base) {
  if (arity < 0) throw InputError("negative arity");
  if (base < 1 || base > kMaxAlphabet) throw InputError("alphabet size must be in [1, 256]");
  size_ = checked_power(static_cast<std::uint64_t>(base), arity);
}

std::uint64_t Radix::encode(std::span<const Symbol> point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw InputError("point has length " + std::to_string(point.size()) + ", expected " +
                     std::to_string(arity_));
  std::uint64_t index = 0;
  for (int i = arity_ - 1; i >= 0; --i) {
    if (point[i] >= base_)
      throw InputError("symbol " + std::to_string(point[i]) + " out of range at coordinate " +
                       std::to_string(i));
    index = index * static_cast<std::uint64_t>(base_) + point[i];
  }
  return index;
}

void Radix::decode(std::uint64_t index, std::span<Symbol> out) const {
  if (index >= size_)
    throw InputError("index " + std::to_string(index) + " out of range (size " +
                     std::to_string(size_) + ")");
  if (static_cast<int>(out.size()) != arity_) throw InputError("decode buffer has wrong length");
  for (int i = 0; i < arity_; ++i) {
    out[i] = static_cast<Symbol>(index % static_cast<std::uint64_t>(base_));
    index /= static_cast<std::uint64_t>(base_);
  }
}

std::vector<Symbol> Radix::decode(std::uint64_t index) const {
  std::vector<Symbol> out(static_cast<std::size_t>(arity_));
  decode(index, out);
  return out;
}

}  // namespace sensilab
