#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensilab/core/encoding.hpp"
#include "sensilab/core/partial_assignment.hpp"

namespace sensilab {

/// Subset of an input alphabet {0..A-1}, A <= 256.
class SymbolSet {
 public:
  SymbolSet() = default;
  static SymbolSet full(int alphabet);
  static SymbolSet singleton(Symbol s);
  static SymbolSet of(std::initializer_list<int> symbols);

  bool contains(int s) const { return s >= 0 && s < kMaxAlphabet && bits_.test(static_cast<std::size_t>(s)); }
  void insert(int s) { bits_.set(static_cast<std::size_t>(s)); }
  void erase(int s) { bits_.reset(static_cast<std::size_t>(s)); }
  int count() const noexcept { return static_cast<int>(bits_.count()); }
  bool empty() const noexcept { return bits_.none(); }
  bool is_full(int alphabet) const;
  bool intersects(const SymbolSet& o) const { return (bits_ & o.bits_).any(); }
  bool subset_of(const SymbolSet& o) const { return (bits_ & ~o.bits_).none(); }
  std::vector<int> elements() const;
  /// The single element of a singleton, else -1.
  int only() const;

  friend bool operator==(const SymbolSet&, const SymbolSet&) = default;

 private:
  std::bitset<kMaxAlphabet> bits_;
};

/// Certificate candidate S_1 x ... x S_n over a uniform input alphabet.
class BoxCertificate {
 public:
  BoxCertificate() = default;
  /// The full box (every S_i the full alphabet).
  BoxCertificate(int arity, int alphabet);
  BoxCertificate(int alphabet, std::vector<SymbolSet> sets);
  static BoxCertificate from_partial_assignment(const PartialAssignment& p, int alphabet);

  int arity() const noexcept { return static_cast<int>(sets_.size()); }
  int alphabet() const noexcept { return alphabet_; }
  const SymbolSet& operator[](int i) const { return sets_.at(static_cast<std::size_t>(i)); }
  void set(int i, SymbolSet s);
  void fix(int i, Symbol s) { set(i, SymbolSet::singleton(s)); }
  const std::vector<SymbolSet>& sets() const noexcept { return sets_; }

  /// Number of coordinates whose set is not the full alphabet.
  int size() const;
  /// Every set is the full alphabet or a singleton of a non-zero symbol.
  bool is_simple() const;
  bool contains(std::span<const Symbol> point) const;
  /// Boxes are consistent iff they share a point, i.e. every coordinate intersects.
  bool consistent_with(const BoxCertificate& other) const;
  /// Number of points in the box; nullopt on overflow.
  std::optional<std::uint64_t> volume() const;
  /// Set for coordinates that are full or singletons; nullopt otherwise.
  std::optional<PartialAssignment> to_partial_assignment() const;
  /// "01*" when every set is full or a singleton, otherwise "{0,2}" groups.
  std::string to_string() const;

  friend bool operator==(const BoxCertificate&, const BoxCertificate&) = default;

 private:
  int alphabet_ = 2;
  std::vector<SymbolSet> sets_;
};

/// A list of certificates over one alphabet, as read from or written to disk.
struct CertificateCollection {
  std::string label;
  int alphabet = 2;
  std::vector<BoxCertificate> certificates;

  int max_size() const;
  static CertificateCollection from_partial_assignments(std::string label,
                                                        const std::vector<PartialAssignment>& ps,
                                                        int alphabet = 2);
};

/// Enumerates every point of a box (coordinate 0 fastest) without allocation per step.
class BoxOdometer {
 public:
  explicit BoxOdometer(const BoxCertificate& box);
  std::span<const Symbol> point() const noexcept { return point_; }
  bool next();

 private:
  std::vector<std::vector<Symbol>> choices_;
  std::vector<std::size_t> pos_;
  std::vector<Symbol> point_;
};

}  // namespace sensilab
