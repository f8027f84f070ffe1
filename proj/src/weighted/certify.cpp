#include "sensilab/weighted/certify.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "sensilab/core/errors.hpp"
#include "sensilab/core/random.hpp"

namespace sensilab::weighted {

const char* to_string(Coverage c) { return c == Coverage::exhaustive ? "exhaustive" : "sampled"; }

namespace {

std::vector<Symbol> odometer_point(std::span<const Symbol> p) { return {p.begin(), p.end()}; }

void check_box_shape(int arity, int alphabet, const BoxCertificate& box) {
  if (box.arity() != arity)
    throw InputError("certificate arity " + std::to_string(box.arity()) + " does not match function arity " +
                     std::to_string(arity));
  if (box.alphabet() != alphabet)
    throw InputError("certificate alphabet " + std::to_string(box.alphabet()) +
                     " does not match function alphabet " + std::to_string(alphabet));
}

// Per-coordinate nested levels: level 0 is the full set at cost 0, later
// levels are smaller sets at strictly higher cost.
struct Level {
  SymbolSet set;
  Rational cost;
};
using Levels = std::vector<std::vector<Level>>;

constexpr std::uint8_t kNever = std::numeric_limits<std::uint8_t>::max();

class LevelSearch {
 public:
  LevelSearch(const DenseFunction& f, Levels levels, const SymbolSet& targets, const Budget& budget)
      : f_(f), levels_(std::move(levels)), targets_(targets), budget_(budget), clock_(budget) {}

  std::vector<int> solve() {
    collect();
    std::uint64_t grid = 1;
    bool fits = true;
    for (const auto& l : levels_) {
      const auto next = grid * (l.size() + 1);
      if (next > budget_.dense_entries) fits = false;
      grid = next;
      if (!fits) break;
    }
    return fits ? solve_grid() : solve_branching();
  }

 private:
  int n() const { return static_cast<int>(levels_.size()); }

  std::uint8_t requirement(int i, Symbol y) const {
    const auto& l = levels_[i];
    for (std::size_t j = 1; j < l.size(); ++j)
      if (!l[j].set.contains(y)) return static_cast<std::uint8_t>(j);
    return kNever;
  }

  void collect() {
    std::set<std::vector<std::uint8_t>> seen;
    const Radix radix = f_.radix();
    std::vector<Symbol> y(static_cast<std::size_t>(n()), 0);
    std::vector<std::uint8_t> r(static_cast<std::size_t>(n()));
    for (std::uint64_t idx = 0; idx < f_.size(); ++idx, next_point(y, radix.base())) {
      if (targets_.contains(f_.at(idx))) continue;
      bool escapable = false;
      for (int i = 0; i < n(); ++i) {
        r[i] = requirement(i, y[i]);
        escapable |= r[i] != kNever;
      }
      if (!escapable) throw InputError("no certificate exists: the point itself maps outside the targets");
      seen.insert(r);
    }
    constraints_.assign(seen.begin(), seen.end());
  }

  Rational cost_of(const std::vector<int>& j) const {
    Rational c = 0;
    for (int i = 0; i < n(); ++i) c += levels_[i][static_cast<std::size_t>(j[i])].cost;
    return c;
  }

  // Marks every requirement vector on a grid, takes the upward closure and
  // scans all level choices; a choice j is valid iff no mark lies strictly above it.
  std::vector<int> solve_grid() {
    std::vector<std::uint64_t> dims, stride;
    std::uint64_t total = 1;
    for (const auto& l : levels_) {
      dims.push_back(l.size() + 1);
      stride.push_back(total);
      total *= l.size() + 1;
    }
    std::vector<std::uint8_t> mark(total, 0);
    for (const auto& r : constraints_) {
      std::uint64_t idx = 0;
      for (int i = 0; i < n(); ++i) {
        const std::uint64_t v = r[i] == kNever ? dims[i] - 1 : r[i];
        idx += v * stride[i];
      }
      mark[idx] = 1;
    }
    for (int i = 0; i < n(); ++i) {
      const auto d = dims[i], s = stride[i];
      for (std::uint64_t idx = total; idx-- > 0;) {
        const auto digit = (idx / s) % d;
        if (digit + 1 < d && mark[idx + s]) mark[idx] = 1;
      }
      clock_.check("weighted certificate search");
    }
    std::optional<Rational> best;
    std::vector<int> best_j, j(static_cast<std::size_t>(n()), 0);
    for (;;) {
      std::uint64_t up = 0;
      for (int i = 0; i < n(); ++i) up += static_cast<std::uint64_t>(j[i] + 1) * stride[i];
      if (!mark[up]) {
        const Rational c = cost_of(j);
        if (!best || c < *best) {
          best = c;
          best_j = j;
        }
      }
      int i = 0;
      for (; i < n(); ++i) {
        auto& digit = j[i];
        if (++digit < static_cast<int>(levels_[i].size())) break;
        digit = 0;
      }
      if (i == n()) break;
    }
    if (!best) throw InvariantError("weighted certificate search found no valid box");
    return best_j;
  }

  std::vector<int> solve_branching() {
    std::vector<int> top(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) top[i] = static_cast<int>(levels_[i].size()) - 1;
    best_cost_ = cost_of(top);
    best_ = top;
    std::vector<int> j(static_cast<std::size_t>(n()), 0);
    branch(j, 0);
    return best_;
  }

  void branch(std::vector<int>& j, const Rational& cost) {
    clock_.check("weighted certificate search");
    const std::vector<std::uint8_t>* open = nullptr;
    for (const auto& r : constraints_) {
      bool escaped = false;
      for (int i = 0; i < n() && !escaped; ++i)
        escaped = r[i] != kNever && j[i] >= r[i];
      if (!escaped) {
        open = &r;
        break;
      }
    }
    if (!open) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_ = j;
      }
      return;
    }
    for (int i = 0; i < n(); ++i) {
      const auto need = (*open)[i];
      if (need == kNever) continue;
      const auto& l = levels_[i];
      const int old = j[i];
      const Rational next = cost - l[old].cost + l[need].cost;
      if (next >= best_cost_) continue;
      j[i] = need;
      branch(j, next);
      j[i] = old;
    }
  }

  const DenseFunction& f_;
  Levels levels_;
  SymbolSet targets_;
  const Budget& budget_;
  SearchClock clock_;
  std::vector<std::vector<std::uint8_t>> constraints_;
  Rational best_cost_;
  std::vector<int> best_;
};

BoxCertificate box_of(const Levels& levels, const std::vector<int>& j, int alphabet) {
  std::vector<SymbolSet> sets;
  for (std::size_t i = 0; i < levels.size(); ++i) sets.push_back(levels[i][static_cast<std::size_t>(j[i])].set);
  return BoxCertificate(alphabet, std::move(sets));
}

void check_point(const DenseFunction& f, const std::vector<Symbol>& x) {
  if (static_cast<int>(x.size()) != f.arity())
    throw InputError("point has length " + std::to_string(x.size()) + ", expected " + std::to_string(f.arity()));
  for (auto s : x)
    if (s >= f.input_alphabet()) throw InputError("symbol " + std::to_string(s) + " out of range");
}

}  // namespace

bool is_certificate(const DenseFunction& f, const BoxCertificate& box, const SymbolSet& targets) {
  check_box_shape(f.arity(), f.input_alphabet(), box);
  BoxOdometer odo(box);
  do {
    if (!targets.contains(f.at(f.encode(odo.point())))) return false;
  } while (odo.next());
  return true;
}

namespace {

// Uniform points of a box; power-of-two set sizes consume bits from a shared pool.
class BoxSampler {
 public:
  BoxSampler(const BoxCertificate& box, std::uint64_t seed) : rng_(stream_rng(seed)) {
    for (const auto& set : box.sets()) {
      offsets_.push_back(static_cast<std::uint32_t>(symbols_.size()));
      for (int e : set.elements()) symbols_.push_back(static_cast<Symbol>(e));
      const auto c = static_cast<std::uint32_t>(set.count());
      counts_.push_back(c);
      bits_.push_back((c & (c - 1)) == 0 ? std::countr_zero(c) : -1);
    }
  }

  void draw(Symbol* out) {
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      std::uint32_t pick = 0;
      if (bits_[i] > 0) pick = static_cast<std::uint32_t>(take(bits_[i]));
      else if (bits_[i] < 0) pick = static_cast<std::uint32_t>(rng_() % counts_[i]);
      out[i] = symbols_[offsets_[i] + pick];
    }
  }

 private:
  std::uint64_t take(int b) {
    if (left_ < b) {
      pool_ = rng_();
      left_ = 64;
    }
    const std::uint64_t v = pool_ & ((std::uint64_t{1} << b) - 1);
    pool_ >>= b;
    left_ -= b;
    return v;
  }

  std::mt19937_64 rng_;
  std::vector<Symbol> symbols_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> counts_;
  std::vector<int> bits_;
  std::uint64_t pool_ = 0;
  int left_ = 0;
};

}  // namespace

CertifyResult is_certificate(const LazyFunction& f, const BoxCertificate& box, const SymbolSet& targets,
                             std::uint64_t samples, std::uint64_t seed, const Budget& budget) {
  check_box_shape(f.arity(), f.input_alphabet(), box);
  CertifyResult r;
  const auto volume = box.volume();
  if (volume && *volume <= budget.scan_points) {
    BoxOdometer odo(box);
    do {
      ++r.points_checked;
      if (!targets.contains(f.evaluate_unchecked(odo.point().data()))) {
        r.counterexample = odometer_point(odo.point());
        return r;
      }
    } while (odo.next());
    r.holds = true;
    return r;
  }
  r.coverage = Coverage::sampled;
  BoxSampler sampler(box, seed);
  std::vector<Symbol> p(static_cast<std::size_t>(f.arity()));
  for (std::uint64_t t = 0; t < samples; ++t) {
    sampler.draw(p.data());
    ++r.points_checked;
    if (!targets.contains(f.evaluate_unchecked(p.data()))) {
      r.counterexample = p;
      return r;
    }
  }
  r.holds = true;
  return r;
}

WeightedCertificate weighted_certificate_complexity(const DenseFunction& f, const WeightFunction& w,
                                                    const std::vector<Symbol>& x,
                                                    std::optional<SymbolSet> targets, const Budget& budget) {
  if (f.input_alphabet() != w.alphabet())
    throw InputError("function alphabet " + std::to_string(f.input_alphabet()) +
                     " does not match weight alphabet " + std::to_string(w.alphabet()));
  check_point(f, x);
  const int alphabet = f.input_alphabet();
  std::vector<Rational> thresholds(w.values());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  Levels levels;
  for (auto xi : x) {
    std::vector<Level> l{{SymbolSet::full(alphabet), 0}};
    if (xi == 0) {
      for (const auto& theta : thresholds) {
        SymbolSet s = SymbolSet::singleton(0);
        for (int sym = 1; sym < alphabet; ++sym)
          if (w(sym) > theta) s.insert(sym);
        l.push_back({s, theta});
      }
    } else {
      l.push_back({SymbolSet::singleton(xi), w(xi)});
    }
    levels.push_back(std::move(l));
  }
  const SymbolSet t = targets.value_or(SymbolSet::singleton(f.evaluate(x)));
  LevelSearch search(f, levels, t, budget);
  const auto j = search.solve();
  WeightedCertificate out{0, box_of(levels, j, alphabet)};
  out.weight = certificate_weight(out.box, w);
  if (!out.box.contains(x) || !is_certificate(f, out.box, t))
    throw InvariantError("weighted certificate witness failed re-verification");
  return out;
}

int multivalued_certificate_complexity(const DenseFunction& f, const std::vector<Symbol>& x,
                                       const Budget& budget) {
  check_point(f, x);
  Levels levels;
  for (auto xi : x)
    levels.push_back({{SymbolSet::full(f.input_alphabet()), 0}, {SymbolSet::singleton(xi), 1}});
  const SymbolSet t = SymbolSet::singleton(f.evaluate(x));
  LevelSearch search(f, levels, t, budget);
  const auto j = search.solve();
  const auto box = box_of(levels, j, f.input_alphabet());
  if (!is_certificate(f, box, t)) throw InvariantError("certificate witness failed re-verification");
  return box.size();
}

int multivalued_certificate_profile(const DenseFunction& f, const Budget& budget) {
  int best = 0;
  for (std::uint64_t idx = 0; idx < f.size(); ++idx)
    best = std::max(best, multivalued_certificate_complexity(f, f.decode(idx), budget));
  return best;
}

bool pairwise_inconsistent(const std::vector<BoxCertificate>& certs, std::string* why) {
  const std::size_t count = certs.size();
  if (count < 2) return true;
  const int arity = certs[0].arity(), alphabet = certs[0].alphabet();
  for (const auto& c : certs)
    if (c.arity() != arity || c.alphabet() != alphabet) throw InputError("certificates have different shapes");
  const std::size_t words = (count + 63) / 64;
  if (static_cast<std::size_t>(arity) * static_cast<std::size_t>(alphabet) * words > (std::size_t{1} << 25)) {
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = a + 1; b < count; ++b)
        if (certs[a].consistent_with(certs[b])) {
          if (why) *why = "certificates " + std::to_string(a) + " and " + std::to_string(b) + " share a point";
          return false;
        }
    return true;
  }
  // holds[i * alphabet + s]: bit set over certificates whose set at i contains s.
  std::vector<std::uint64_t> holds(static_cast<std::size_t>(arity) * static_cast<std::size_t>(alphabet) * words, 0);
  std::vector<std::vector<int>> restricted(count);
  for (std::size_t a = 0; a < count; ++a)
    for (int i = 0; i < arity; ++i) {
      const auto& set = certs[a][i];
      if (!set.is_full(alphabet)) restricted[a].push_back(i);
      for (int s : set.elements())
        holds[(static_cast<std::size_t>(i) * alphabet + s) * words + a / 64] |= std::uint64_t{1} << (a % 64);
    }
  std::vector<std::uint64_t> meets(words), any(words);
  for (std::size_t a = 0; a + 1 < count; ++a) {
    std::fill(meets.begin(), meets.end(), ~std::uint64_t{0});
    for (int i : restricted[a]) {
      std::fill(any.begin(), any.end(), 0);
      for (int s : certs[a][i].elements()) {
        const std::uint64_t* row = &holds[(static_cast<std::size_t>(i) * alphabet + s) * words];
        for (std::size_t t = 0; t < words; ++t) any[t] |= row[t];
      }
      for (std::size_t t = 0; t < words; ++t) meets[t] &= any[t];
    }
    for (std::size_t b = a + 1; b < count; ++b)
      if ((meets[b / 64] >> (b % 64)) & 1u) {
        if (why)
          *why = "certificates " + std::to_string(a) + " (" + certs[a].to_string() + ") and " +
                 std::to_string(b) + " (" + certs[b].to_string() + ") share a point";
        return false;
      }
  }
  return true;
}

namespace {

// Shape, simplicity, size, weight and pairwise inconsistency; reports how many checks remain.
VerifiedCollection start_verification(int arity, int alphabet, const CertificateCollection& c, int target,
                                      const WeightFunction* w) {
  VerifiedCollection v;
  v.collection = c;
  v.target = target;
  v.simple = true;
  for (std::size_t i = 0; i < c.certificates.size(); ++i) {
    const auto& box = c.certificates[i];
    check_box_shape(arity, alphabet, box);
    v.simple &= box.is_simple();
    v.max_size = std::max(v.max_size, box.size());
    if (w) {
      try {
        const auto wt = certificate_weight(box, *w);
        if (!v.max_weight || wt > *v.max_weight) v.max_weight = wt;
      } catch (const UnsupportedError& e) {
        v.failures.push_back("certificate " + std::to_string(i) + ": " + e.what());
      }
    }
  }
  std::string why;
  v.unambiguous = pairwise_inconsistent(c.certificates, &why);
  if (!v.unambiguous) v.failures.push_back(why);
  return v;
}

}  // namespace

VerifiedCollection verify_collection(const DenseFunction& f, const CertificateCollection& c, int target,
                                     const WeightFunction* w) {
  auto v = start_verification(f.arity(), f.input_alphabet(), c, target, w);
  const SymbolSet t = SymbolSet::singleton(static_cast<Symbol>(target));
  v.certifying = true;
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < c.certificates.size(); ++i) {
    if (!is_certificate(f, c.certificates[i], t)) {
      v.certifying = false;
      v.failures.push_back("certificate " + std::to_string(i) + " (" + c.certificates[i].to_string() +
                           ") contains a point with value != " + std::to_string(target));
    }
    covered += c.certificates[i].volume().value_or(0);
  }
  if (v.certifying && v.unambiguous) {
    const auto preimage = static_cast<std::uint64_t>(std::count(f.table().begin(), f.table().end(), target));
    v.covering = covered == preimage;
  } else {
    v.covering = true;
    for (std::uint64_t idx = 0; idx < f.size() && v.covering; ++idx) {
      if (f.at(idx) != target) continue;
      const auto p = f.decode(idx);
      v.covering = std::any_of(c.certificates.begin(), c.certificates.end(),
                               [&](const BoxCertificate& b) { return b.contains(p); });
    }
  }
  if (!v.covering) v.failures.push_back("the collection does not cover every point with value " + std::to_string(target));
  return v;
}

VerifiedCollection verify_collection(const BooleanFunction& f, const CertificateCollection& c, int target) {
  auto v = start_verification(f.arity(), 2, c, target, nullptr);
  v.certifying = true;
  std::uint64_t covered = 0;
  const bool want = target != 0;
  for (std::size_t i = 0; i < c.certificates.size(); ++i) {
    const auto p = c.certificates[i].to_partial_assignment();
    if (!p) throw InputError("Boolean certificates must fix coordinates to single bits");
    const Cube cube = p->to_cube();
    const std::uint32_t freec = ((f.arity() == 32 ? 0u : (1u << f.arity())) - 1u) & ~cube.fixed;
    bool ok = true;
    for (std::uint32_t s = freec;; s = (s - 1) & freec) {
      if (f(cube.values | s) != want) {
        ok = false;
        break;
      }
      if (s == 0) break;
    }
    if (!ok) {
      v.certifying = false;
      v.failures.push_back("certificate " + std::to_string(i) + " (" + c.certificates[i].to_string() +
                           ") contains a point with value != " + std::to_string(target));
    }
    covered += std::uint64_t{1} << (f.arity() - cube.size());
  }
  const auto ones = f.count_ones();
  const auto preimage = want ? ones : f.size() - ones;
  if (v.certifying && v.unambiguous) {
    v.covering = covered == preimage;
  } else {
    std::vector<Cube> cubes;
    for (const auto& b : c.certificates) cubes.push_back(b.to_partial_assignment()->to_cube());
    v.covering = true;
    for (std::uint64_t x = 0; x < f.size() && v.covering; ++x)
      if (f(x) == want)
        v.covering = std::any_of(cubes.begin(), cubes.end(), [&](const Cube& q) { return q.contains(x); });
  }
  if (!v.covering) v.failures.push_back("the collection does not cover every point with value " + std::to_string(target));
  return v;
}

VerifiedCollection verify_collection(const LazyFunction& f, const CertificateCollection& c, int target,
                                     const WeightFunction* w, std::uint64_t samples, std::uint64_t seed,
                                     const Budget& budget) {
  if (const auto* d = f.as_dense()) return verify_collection(*d, c, target, w);
  auto v = start_verification(f.arity(), f.input_alphabet(), c, target, w);
  const SymbolSet t = SymbolSet::singleton(static_cast<Symbol>(target));
  v.certifying = true;
  std::uint64_t covered = 0;
  bool volumes_known = true;
  for (std::size_t i = 0; i < c.certificates.size(); ++i) {
    const auto r = is_certificate(f, c.certificates[i], t, samples, seed + i, budget);
    if (r.coverage == Coverage::sampled) v.coverage = Coverage::sampled;
    if (!r.holds) {
      v.certifying = false;
      v.failures.push_back("certificate " + std::to_string(i) + " (" + c.certificates[i].to_string() +
                           ") contains a point with value != " + std::to_string(target));
    }
    const auto vol = c.certificates[i].volume();
    if (vol) covered += *vol; else volumes_known = false;
  }
  const auto domain = f.domain_size();
  const int base = f.input_alphabet();
  auto covered_by_some = [&](std::span<const Symbol> p) {
    return std::any_of(c.certificates.begin(), c.certificates.end(),
                       [&](const BoxCertificate& b) { return b.contains(p); });
  };
  if (domain && *domain <= budget.scan_points) {
    std::vector<Symbol> p(static_cast<std::size_t>(f.arity()), 0);
    std::uint64_t preimage = 0;
    bool all_covered = true;
    const bool counting = v.certifying && v.unambiguous && volumes_known && v.coverage == Coverage::exhaustive;
    do {
      if (f.evaluate_unchecked(p.data()) != target) continue;
      ++preimage;
      if (!counting && all_covered) all_covered = covered_by_some(p);
    } while (next_point(p, base));
    v.covering = counting ? covered == preimage : all_covered;
  } else {
    v.coverage = Coverage::sampled;
    BoxSampler sampler(BoxCertificate(f.arity(), base), splitmix64(seed ^ 0xc0ffee));
    std::vector<Symbol> p(static_cast<std::size_t>(f.arity()));
    v.covering = true;
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples * 64 && hits < samples && v.covering; ++s) {
      sampler.draw(p.data());
      if (f.evaluate_unchecked(p.data()) != target) continue;
      ++hits;
      v.covering = covered_by_some(p);
    }
  }
  if (!v.covering) v.failures.push_back("the collection does not cover every point with value " + std::to_string(target));
  return v;
}

}  // namespace sensilab::weighted
