#include "sensilab/core/box.hpp"

#include <algorithm>
#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {

SymbolSet SymbolSet::full(int alphabet) {
  if (alphabet < 1 || alphabet > kMaxAlphabet) throw InputError("alphabet size must be in [1, 256]");
  SymbolSet s;
  for (int i = 0; i < alphabet; ++i) s.insert(i);
  return s;
}

SymbolSet SymbolSet::singleton(Symbol s) {
  SymbolSet r;
  r.insert(s);
  return r;
}

SymbolSet SymbolSet::of(std::initializer_list<int> symbols) {
  SymbolSet r;
  for (int s : symbols) {
    if (s < 0 || s >= kMaxAlphabet) throw InputError("symbol out of range");
    r.insert(s);
  }
  return r;
}

bool SymbolSet::is_full(int alphabet) const {
  return count() == alphabet && (alphabet == kMaxAlphabet || !(bits_ >> static_cast<std::size_t>(alphabet)).any());
}

std::vector<int> SymbolSet::elements() const {
  std::vector<int> e;
  e.reserve(bits_.count());
  for (std::size_t i = bits_._Find_first(); i < bits_.size(); i = bits_._Find_next(i)) e.push_back(static_cast<int>(i));
  return e;
}

int SymbolSet::only() const {
  if (count() != 1) return -1;
  for (int i = 0; i < kMaxAlphabet; ++i)
    if (bits_.test(static_cast<std::size_t>(i))) return i;
  return -1;
}

BoxCertificate::BoxCertificate(int arity, int alphabet)
    : alphabet_(alphabet), sets_(static_cast<std::size_t>(arity), SymbolSet::full(alphabet)) {
  if (arity < 0) throw InputError("negative arity");
}

BoxCertificate::BoxCertificate(int alphabet, std::vector<SymbolSet> sets)
    : alphabet_(alphabet), sets_(std::move(sets)) {
  const auto universe = SymbolSet::full(alphabet);
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].empty()) throw InputError("certificate set " + std::to_string(i) + " is empty");
    if (!sets_[i].subset_of(universe))
      throw InputError("certificate set " + std::to_string(i) + " has a symbol outside the alphabet");
  }
}

BoxCertificate BoxCertificate::from_partial_assignment(const PartialAssignment& p, int alphabet) {
  BoxCertificate b(p.arity(), alphabet);
  for (int i = 0; i < p.arity(); ++i) {
    if (p.is_free(i)) continue;
    if (p[i] >= alphabet) throw InputError("assignment symbol outside the alphabet");
    b.fix(i, static_cast<Symbol>(p[i]));
  }
  return b;
}

void BoxCertificate::set(int i, SymbolSet s) {
  if (s.empty()) throw InputError("certificate sets must be non-empty");
  if (!s.subset_of(SymbolSet::full(alphabet_))) throw InputError("certificate symbol outside the alphabet");
  sets_.at(static_cast<std::size_t>(i)) = s;
}

int BoxCertificate::size() const {
  int n = 0;
  for (const auto& s : sets_) n += !s.is_full(alphabet_);
  return n;
}

bool BoxCertificate::is_simple() const {
  return std::all_of(sets_.begin(), sets_.end(), [&](const SymbolSet& s) {
    return s.is_full(alphabet_) || (s.count() == 1 && s.only() != 0);
  });
}

bool BoxCertificate::contains(std::span<const Symbol> point) const {
  if (point.size() != sets_.size()) throw InputError("point length does not match certificate");
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (!sets_[i].contains(point[i])) return false;
  return true;
}

bool BoxCertificate::consistent_with(const BoxCertificate& other) const {
  if (other.arity() != arity()) throw InputError("certificates have different arities");
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (!sets_[i].intersects(other.sets_[i])) return false;
  return true;
}

std::optional<std::uint64_t> BoxCertificate::volume() const {
  std::uint64_t v = 1;
  for (const auto& s : sets_) {
    const auto c = static_cast<std::uint64_t>(s.count());
    if (v > (std::uint64_t{1} << 62) / c) return std::nullopt;
    v *= c;
  }
  return v;
}

std::optional<PartialAssignment> BoxCertificate::to_partial_assignment() const {
  PartialAssignment p(arity());
  for (int i = 0; i < arity(); ++i) {
    const auto& s = sets_[i];
    if (s.is_full(alphabet_)) continue;
    if (s.count() != 1) return std::nullopt;
    p.set(i, s.only());
  }
  return p;
}

std::string BoxCertificate::to_string() const {
  std::string out;
  for (const auto& s : sets_) {
    if (s.is_full(alphabet_)) {
      out += '*';
    } else if (s.count() == 1 && s.only() < 10) {
      out += static_cast<char>('0' + s.only());
    } else {
      out += '{';
      bool first = true;
      for (int e : s.elements()) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
      }
      out += '}';
    }
  }
  return out;
}

int CertificateCollection::max_size() const {
  int m = 0;
  for (const auto& c : certificates) m = std::max(m, c.size());
  return m;
}

CertificateCollection CertificateCollection::from_partial_assignments(
    std::string label, const std::vector<PartialAssignment>& ps, int alphabet) {
  CertificateCollection c;
  c.label = std::move(label);
  c.alphabet = alphabet;
  for (const auto& p : ps) c.certificates.push_back(BoxCertificate::from_partial_assignment(p, alphabet));
  return c;
}

BoxOdometer::BoxOdometer(const BoxCertificate& box)
    : choices_(static_cast<std::size_t>(box.arity())),
      pos_(static_cast<std::size_t>(box.arity()), 0),
      point_(static_cast<std::size_t>(box.arity()), 0) {
  for (int i = 0; i < box.arity(); ++i) {
    for (int e : box[i].elements()) choices_[i].push_back(static_cast<Symbol>(e));
    point_[i] = choices_[i].front();
  }
}

bool BoxOdometer::next() {
  for (std::size_t i = 0; i < choices_.size(); ++i) {
    if (++pos_[i] < choices_[i].size()) {
      point_[i] = choices_[i][pos_[i]];
      return true;
    }
    pos_[i] = 0;
    point_[i] = choices_[i][0];
  }
  return false;
}

}  // namespace sensilab
