#include "sensilab/core/partial_assignment.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {

PartialAssignment::PartialAssignment(int arity)
    : entries_(static_cast<std::size_t>(arity < 0 ? 0 : arity), kFree) {
  if (arity < 0) throw InputError("negative arity");
}

PartialAssignment::PartialAssignment(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < kFree || e >= kMaxAlphabet) throw InputError("partial assignment entry out of range");
}

PartialAssignment PartialAssignment::parse(std::string_view text) {
  std::vector<int> e;
  e.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '*') e.push_back(kFree);
    else if (c >= '0' && c <= '9') e.push_back(c - '0');
    else throw ParseError(std::string("bad partial assignment character '") + c + "'", 1, i + 1);
  }
  return PartialAssignment(std::move(e));
}

PartialAssignment PartialAssignment::from_cube(const Cube& cube, int arity) {
  PartialAssignment p(arity);
  for (int i = 0; i < arity; ++i)
    if ((cube.fixed >> i) & 1u) p.entries_[i] = static_cast<int>((cube.values >> i) & 1u);
  return p;
}

void PartialAssignment::set(int i, int value) {
  if (value < kFree || value >= kMaxAlphabet) throw InputError("partial assignment value out of range");
  entries_.at(static_cast<std::size_t>(i)) = value;
}

int PartialAssignment::size() const noexcept {
  int n = 0;
  for (int e : entries_) n += e != kFree;
  return n;
}

std::vector<int> PartialAssignment::support() const {
  std::vector<int> s;
  for (int i = 0; i < arity(); ++i)
    if (entries_[i] != kFree) s.push_back(i);
  return s;
}

bool PartialAssignment::contains(std::span<const Symbol> point) const {
  if (point.size() != entries_.size()) throw InputError("point length does not match assignment");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != kFree && entries_[i] != point[i]) return false;
  return true;
}

bool PartialAssignment::contains_bits(std::uint64_t x) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != kFree && entries_[i] != static_cast<int>((x >> i) & 1u)) return false;
  return true;
}

bool PartialAssignment::consistent_with(const PartialAssignment& other) const {
  if (other.arity() != arity()) throw InputError("assignments have different arities");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != kFree && other.entries_[i] != kFree && entries_[i] != other.entries_[i])
      return false;
  return true;
}

std::optional<PartialAssignment> PartialAssignment::merge(const PartialAssignment& other) const {
  if (!consistent_with(other)) return std::nullopt;
  PartialAssignment r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (r.entries_[i] == kFree) r.entries_[i] = other.entries_[i];
  return r;
}

Cube PartialAssignment::to_cube() const {
  if (arity() > 32) throw SizeError("cube masks hold at most 32 coordinates");
  Cube c;
  for (int i = 0; i < arity(); ++i) {
    if (entries_[i] == kFree) continue;
    if (entries_[i] > 1) throw InputError("non-Boolean entry in cube conversion");
    c.fixed |= 1u << i;
    if (entries_[i] == 1) c.values |= 1u << i;
  }
  return c;
}

std::string PartialAssignment::to_string() const {
  std::string s;
  for (int e : entries_) {
    if (e == kFree) s += '*';
    else if (e < 10) s += static_cast<char>('0' + e);
    else s += "{" + std::to_string(e) + "}";
  }
  return s;
}

}  // namespace sensilab
