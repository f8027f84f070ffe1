#include "sensilab/constructions/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sensilab/constructions/compose.hpp"
#include "sensilab/constructions/realizer.hpp"
#include "sensilab/constructions/transforms.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/core/io.hpp"
#include "sensilab/core/random.hpp"
#include "sensilab/measures/blocks.hpp"
#include "sensilab/parallel/kernels.hpp"
#include "sensilab/weighted/certify.hpp"

namespace sensilab::constructions {

using weighted::WeightFunction;

const char* to_string(Verification v) {
  switch (v) {
    case Verification::exhaustive: return "exhaustive";
    case Verification::sampled: return "sampled";
    case Verification::structural: return "structural";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kMaxSplice = 2'000'000;

long double log_rational(const Rational& r) {
  return std::log(static_cast<long double>(r.get_num().get_d())) -
         std::log(static_cast<long double>(r.get_den().get_d()));
}

Rational power(const Rational& r, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= r;
  return out;
}

std::string decimal(const mpz_class& z) { return z.get_str(); }

mpz_class ipow(long base, int e) {
  mpz_class out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

Rational max_weight(const CertificateCollection& c, const WeightFunction& w) {
  Rational best = 0;
  for (const auto& box : c.certificates) best = std::max(best, weighted::certificate_weight(box, w));
  return best;
}

std::uint64_t splice_count(const CertificateCollection& outer, const std::vector<std::uint64_t>& sizes) {
  std::uint64_t total = 0;
  for (const auto& c : outer.certificates) {
    std::uint64_t prod = 1;
    for (int j = 0; j < c.arity(); ++j) {
      if (c[j].is_full(c.alphabet())) continue;
      prod *= sizes.at(static_cast<std::size_t>(c[j].only() - 1));
      if (prod > kMaxSplice) return kMaxSplice + 1;
    }
    total += prod;
    if (total > kMaxSplice) return kMaxSplice + 1;
  }
  return total;
}

Verification from_coverage(weighted::Coverage c) {
  return c == weighted::Coverage::exhaustive ? Verification::exhaustive : Verification::sampled;
}

// C(f, 0^n) for a Boolean table: the least |S| such that zeroing S forces 0.
int boolean_zero_certificate(const BooleanFunction& f) {
  BooleanFunction z = f;
  par::zeta_or_subsets(z.mutable_words(), f.arity(), par::Exec::parallel);
  // z(T) = 1 iff some 1-input lies inside T; the free set of a certificate is such a T with z(T) = 0.
  int best_free = -1;
  const auto words = z.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t zeros = ~words[w];
    if (f.arity() < 6) zeros &= (std::uint64_t{1} << f.size()) - 1;
    while (zeros) {
      const int b = std::countr_zero(zeros);
      zeros &= zeros - 1;
      best_free = std::max(best_free, std::popcount(static_cast<std::uint64_t>(w * 64 + static_cast<std::size_t>(b))));
    }
  }
  return best_free < 0 ? -1 : f.arity() - best_free;
}

// C(h, 0) for h over symbols, read from its Booleanization `hb` with `bits` bits per symbol.
int symbol_zero_certificate(const BooleanFunction& hb, int symbols, int bits) {
  if (symbols > 24) throw SizeError("too many symbol coordinates for the zero-support scan");
  std::vector<std::uint8_t> bad(std::size_t{1} << symbols, 0);
  const std::uint64_t block = (std::uint64_t{1} << bits) - 1;
  const auto words = hb.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t ones = words[w];
    while (ones) {
      const std::uint64_t x = w * 64 + static_cast<std::uint64_t>(std::countr_zero(ones));
      ones &= ones - 1;
      std::uint32_t zero = 0;
      for (int j = 0; j < symbols; ++j)
        if (((x >> (j * bits)) & block) == 0) zero |= 1u << j;
      bad[zero] = 1;
    }
  }
  for (int i = 0; i < symbols; ++i)
    for (std::uint32_t s = 0; s < bad.size(); ++s)
      if (!((s >> i) & 1u) && bad[s | (1u << i)]) bad[s] = 1;
  int best = symbols + 1;
  for (std::uint32_t s = 0; s < bad.size(); ++s)
    if (!bad[s]) best = std::min(best, std::popcount(s));
  return best;
}

void put(StageRecord& st, const std::string& name, bool ok) { st.checks[name] = ok; }

}  // namespace

WeightFunction named_weights(const std::string& name, int k) {
  if (name == "frac") return fractional_weights(k);
  if (name == "int") return integer_weights(k);
  if (name == "plus1") return WeightFunction::affine(k, 1, 1, Rational(2, k + 3));
  if (name == "const") return WeightFunction::constant(k, 1);
  throw InputError("unknown weight scheme '" + name + "' (expected frac, int, plus1 or const)");
}

PipelineArtifact run_pipeline(const PipelineOptions& o) {
  if (o.m < 1) throw InputError("m must be at least 1");
  const Budget& budget = o.budget;
  PipelineArtifact art;
  art.options = o;
  const auto plane = projective_plane(o.q);
  const auto gadget = goos_gadget(plane, budget);
  art.k = plane.k;
  art.n = plane.n;
  art.w0 = named_weights(o.weights, art.k);
  const int k = art.k, n = art.n;
  const std::vector<Symbol> zero_n(static_cast<std::size_t>(n), 0);

  // Stage h_1: the gadget itself.
  StageRecord s1;
  s1.name = "h1";
  s1.arity = n;
  s1.alphabet = k + 1;
  s1.collection_file = "h1.collection.json";
  s1.input_length = std::to_string(n);
  s1.input_length_bound = std::to_string(n);
  art.u = max_weight(gadget.canonical, art.w0);
  if (gadget.dense) {
    const auto v = weighted::verify_collection(*gadget.dense, gadget.canonical, 1, &art.w0);
    put(s1, "collection_verified", v.ok() && v.simple);
    art.v = weighted::weighted_certificate_complexity(*gadget.dense, art.w0, zero_n, std::nullopt, budget).weight;
    art.gadget_values_computed = true;
    s1.measured_v = art.v;
    s1.verification = Verification::exhaustive;
  } else {
    if (o.weights != "frac" && o.weights != "int")
      throw UnsupportedError("the 0-input weight of a lazy gadget is only known in closed form for linear weights");
    art.v = art.w0(1) * n;
    s1.verification = Verification::structural;
    s1.notes.push_back("v taken from the closed form n * w0(1); the gadget has " + decimal(ipow(k + 1, n)) + " points");
    put(s1, "collection_structural", true);
  }
  s1.u = art.u;
  s1.v = art.v;
  s1.measured_u = art.u;
  put(s1, "gadget_zero_is_zero", gadget.function.evaluate(zero_n) == 0);
  art.stages.push_back(s1);
  art.collections[s1.collection_file] = gadget.canonical;

  // Iterated composition h_j = h o tilde(h_{j-1}).
  LazyFunction h = gadget.function;
  WeightFunction w = art.w0;
  std::optional<CertificateCollection> coll = gadget.canonical;
  weighted::VerifiedCollection verified;
  verified.collection = gadget.canonical;
  verified.target = 1;
  verified.certifying = verified.unambiguous = verified.covering = verified.simple = true;
  for (int j = 2; j <= o.m; ++j) {
    StageRecord st;
    st.name = "h" + std::to_string(j);
    st.u = power(art.u, j);
    st.v = power(art.v, j);
    st.verification = Verification::structural;
    st.input_length = decimal(ipow(n, j));
    st.input_length_bound = st.input_length;
    if (!coll) {
      st.notes.push_back("previous collection not materialized; bounds carried symbolically");
      art.stages.push_back(st);
      continue;
    }
    const auto ext = extend_output(weighted::WeightedFunction(h, w), verified, k, art.w0);
    std::vector<std::uint64_t> sizes;
    for (const auto& c : ext.by_output) sizes.push_back(c.certificates.size());
    const auto count = splice_count(gadget.canonical, sizes);
    h = LazyFunction::compose_copies(gadget.function, ext.tilde.function, LazyKind::outer_compose, st.name);
    w = ext.tilde.weight;
    st.arity = h.arity();
    st.alphabet = h.input_alphabet();
    if (count > kMaxSplice) {
      coll.reset();
      st.notes.push_back("spliced collection has more than " + std::to_string(kMaxSplice) + " certificates; not materialized");
      art.stages.push_back(st);
      continue;
    }
    coll = splice(gadget.canonical, ext.by_output, ext.tilde.function.arity(), h.input_alphabet(), st.name);
    verified = weighted::verify_collection(h, *coll, 1, &w, o.samples, splitmix64(o.seed + static_cast<std::uint64_t>(j)), budget);
    st.verification = from_coverage(verified.coverage);
    st.measured_u = verified.max_weight;
    st.collection_file = st.name + ".collection.json";
    put(st, "collection_verified", verified.ok() && verified.simple);
    put(st, "weight_le_u", verified.max_weight && *verified.max_weight <= *st.u);
    put(st, "size_le_k^m", verified.max_size <= ipow(k, j));
    art.collections[st.collection_file] = *coll;
    art.stages.push_back(st);
  }
  art.h_m = h;
  const Rational um = power(art.u, o.m), vm = power(art.v, o.m);
  const mpz_class km = ipow(k, o.m), nm = ipow(n, o.m);

  // Rounding.
  const WeightFunction wr = w.ceiled();
  StageRecord sr;
  sr.name = "h" + std::to_string(o.m) + "-rounded";
  sr.arity = h.arity();
  sr.alphabet = h.input_alphabet();
  sr.u = um + Rational(km);
  sr.v = vm;
  sr.verification = Verification::structural;
  sr.input_length = decimal(nm);
  sr.input_length_bound = sr.input_length;
  if (coll) {
    sr.measured_u = max_weight(*coll, wr);
    put(sr, "weight_le_u+k^m", *sr.measured_u <= *sr.u);
    put(sr, "weight_le_2u^m", *sr.measured_u <= 2 * um);
    bool additive = true;
    for (const auto& box : coll->certificates)
      additive &= weighted::certificate_weight(box, wr) <= weighted::certificate_weight(box, w) + box.size();
    put(sr, "ceiling_additive", additive);
  }
  if (o.m == 1 && gadget.dense) {
    sr.measured_v = weighted::weighted_certificate_complexity(*gadget.dense, wr, zero_n, std::nullopt, budget).weight;
    sr.verification = Verification::exhaustive;
    put(sr, "c0_ge_v", *sr.measured_v >= vm);
  }
  art.stages.push_back(sr);

  // Weight realization h'' = h_m o g.
  const auto realizer = weight_realizer(wr);
  const int big_m = realizer.function.arity();
  const int alphabet = h.input_alphabet();
  const int bits = bits_per_symbol(alphabet);
  art.h_double_prime = LazyFunction::compose_copies(h, LazyFunction::dense(realizer.function), LazyKind::realizer_compose, "h''");
  StageRecord s2;
  s2.name = "h''";
  s2.arity = art.h_double_prime.arity();
  s2.alphabet = alphabet;
  s2.u = um + Rational(km);
  s2.v = vm;
  s2.collection_file = "h2.collection.json";
  s2.input_length = decimal(nm * big_m);
  const Rational w0max = art.w0.max_weight();
  const Rational len_bound = Rational(nm) * (power(w0max, o.m) + 1);
  s2.input_length_bound = decimal(mpz_class(ceil(len_bound).get_num()));
  put(s2, "input_length_le_bound", Rational(nm * big_m) <= ceil(len_bound));
  std::optional<CertificateCollection> coll2;
  if (coll) {
    std::vector<std::uint64_t> sizes;
    for (const auto& c : realizer.collections) sizes.push_back(c.certificates.size());
    if (splice_count(*coll, sizes) <= kMaxSplice) {
      coll2 = splice(*coll, realizer.collections, big_m, alphabet, "h''");
      s2.measured_u = coll2->max_size();
      put(s2, "size_le_u", *s2.measured_u <= *s2.u);
      art.collections[s2.collection_file] = *coll2;
    }
  }
  s2.verification = Verification::structural;

  // Booleanization h' = h'' o g_Sigma.
  art.h_prime = LazyFunction::booleanize(art.h_double_prime, "h'");
  StageRecord s3;
  s3.name = "h'";
  s3.arity = art.h_prime.arity();
  s3.alphabet = 2;
  s3.u = (um + Rational(km)) * bits;
  s3.v = vm;
  s3.collection_file = "h1prime.collection.json";
  s3.input_length = decimal(nm * big_m * bits);
  s3.input_length_bound = decimal(mpz_class(ceil(len_bound).get_num()) * bits);
  s3.notes.push_back("logarithmic factor ceil(log2 |Sigma|) = " + std::to_string(bits));
  s3.verification = Verification::structural;
  std::optional<CertificateCollection> coll3;
  if (coll2) {
    coll3 = CertificateCollection::from_partial_assignments("h'", booleanize_collection(*coll2));
    s3.measured_u = coll3->max_size();
    put(s3, "size_le_u*log", *s3.measured_u <= *s3.u);
    art.collections[s3.collection_file] = *coll3;
  }

  const bool table_fits = o.exact_boolean && o.m == 1 && art.h_prime.arity() <= BooleanFunction::kMaxArity &&
                          (std::uint64_t{1} << art.h_prime.arity()) <= budget.boolean_bits;
  if (table_fits) {
    const auto outer = LazyFunction::booleanize(h).materialize_boolean(budget);
    const int inner_bits = big_m * bits;
    std::vector<std::uint32_t> inner(std::size_t{1} << inner_bits);
    std::vector<Symbol> sym(static_cast<std::size_t>(big_m));
    for (std::uint32_t code = 0; code < inner.size(); ++code) {
      for (int t = 0; t < big_m; ++t) sym[t] = decode_code((code >> (t * bits)) & ((1u << bits) - 1), alphabet);
      inner[code] = realizer.function.evaluate(sym);
    }
    art.h_prime_table = par::compose_bits(outer, inner, inner_bits, bits, h.arity(), par::Exec::parallel, budget);
    art.h_prime_table->set_name("h'");
    const auto& table = *art.h_prime_table;
    auto rng = stream_rng(o.seed, 0x5eed);
    bool agrees = true;
    std::vector<Symbol> point(static_cast<std::size_t>(table.arity()));
    for (std::uint64_t t = 0; t < o.samples && agrees; ++t) {
      const std::uint64_t x = rng() & (table.size() - 1);
      for (int i = 0; i < table.arity(); ++i) point[i] = (x >> i) & 1u;
      agrees = (art.h_prime.evaluate_unchecked(point.data()) != 0) == table(x);
    }
    put(s3, "table_matches_lazy", agrees);
    s3.verification = Verification::exhaustive;
    if (coll3) {
      const auto v = weighted::verify_collection(table, *coll3, 1);
      put(s3, "collection_verified", v.ok());
      s2.verification = Verification::exhaustive;
      put(s2, "collection_verified", v.ok());
      s2.notes.push_back("verified through its exact bitwise translation on the h' table");
    }
    const int c_hp = boolean_zero_certificate(table);
    const int c_h2 = symbol_zero_certificate(table, art.h_double_prime.arity(), bits);
    s3.measured_v = c_hp;
    s2.measured_v = c_h2;
    put(s3, "c0_ge_v", Rational(c_hp) >= vm);
    put(s2, "c0_ge_v", Rational(c_h2) >= vm);
    put(s3, "sandwich_at_zero", c_h2 <= c_hp && c_hp <= c_h2 * bits);
    if (art.h_double_prime.fits_dense(budget) && table.arity() <= budget.block_arity) {
      const auto dense2 = art.h_double_prime.materialize(budget);
      const int c_full2 = weighted::multivalued_certificate_profile(dense2, budget);
      const int c_fullp = measures::certificate_profile(table, budget).all;
      s3.notes.push_back("C(h'') = " + std::to_string(c_full2) + ", C(h') = " + std::to_string(c_fullp));
      put(s3, "sandwich_full", c_full2 <= c_fullp && c_fullp <= c_full2 * bits);
      put(s2, "c0_dense_matches",
          weighted::multivalued_certificate_complexity(dense2, std::vector<Symbol>(static_cast<std::size_t>(dense2.arity()), 0), budget) == c_h2);
    }
  } else if (coll3) {
    const auto v = weighted::verify_collection(art.h_prime, *coll3, 1, nullptr, o.samples, o.seed, budget);
    s3.verification = from_coverage(v.coverage);
    put(s3, "collection_verified", v.ok());
    if (coll2) {
      const auto v2 = weighted::verify_collection(art.h_double_prime, *coll2, 1, nullptr, o.samples, o.seed + 1, budget);
      s2.verification = from_coverage(v2.coverage);
      put(s2, "collection_verified", v2.ok());
    }
  }
  art.stages.push_back(s2);
  art.stages.push_back(s3);
  return art;
}

bool PipelineArtifact::passed() const {
  for (const auto& st : stages)
    for (const auto& [name, ok] : st.checks)
      if (!ok) return false;
  return true;
}

long double PipelineArtifact::exponent() const { return log_rational(v) / log_rational(u); }

nlohmann::json PipelineArtifact::ledger() const {
  using nlohmann::json;
  auto opt = [](const std::optional<Rational>& r) { return r ? json(sensilab::to_string(*r)) : json(nullptr); };
  json stages_json = json::array();
  for (const auto& st : stages) {
    json checks = json::object();
    for (const auto& [name, ok] : st.checks) checks[name] = ok;
    stages_json.push_back({{"name", st.name},
                           {"arity", st.arity},
                           {"alphabet", st.alphabet},
                           {"u", opt(st.u)},
                           {"v", opt(st.v)},
                           {"measured_u", opt(st.measured_u)},
                           {"measured_v", opt(st.measured_v)},
                           {"collection_file", st.collection_file.empty() ? json(nullptr) : json(st.collection_file)},
                           {"verification", to_string(st.verification)},
                           {"input_length", st.input_length},
                           {"input_length_bound", st.input_length_bound},
                           {"checks", checks},
                           {"notes", st.notes}});
  }
  const long double comparison =
      std::log(static_cast<long double>(n)) / std::log(static_cast<long double>(k) * (k + 1) / 2);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lf", exponent());
  char cmp[64];
  std::snprintf(cmp, sizeof cmp, "%.12Lf", comparison);
  return json{{"q", options.q},
              {"k", k},
              {"n", n},
              {"m", options.m},
              {"weights", options.weights},
              {"w0", w0.to_string()},
              {"seed", options.seed},
              {"samples", options.samples},
              {"u", sensilab::to_string(u)},
              {"v", sensilab::to_string(v)},
              {"gadget_values_computed", gadget_values_computed},
              {"exponent", buf},
              {"comparison_exponent", cmp},
              {"stages", stages_json},
              {"passed", passed()}};
}

void PipelineArtifact::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [file, c] : collections) write_collection(c, dir / file);
  write_text_atomic(dir / "ledger.json", ledger().dump(2) + "\n");
}

std::vector<std::pair<std::string, WeightFunction>> default_weight_candidates(int k) {
  std::vector<Rational> sq;
  for (int i = 1; i <= k; ++i) sq.emplace_back(i * i);
  return {{"const", WeightFunction::constant(k, 1)},  {"i", WeightFunction::affine(k, 1, 0)},
          {"i+1", WeightFunction::affine(k, 1, 1)},    {"i+2", WeightFunction::affine(k, 1, 2)},
          {"2i-1", WeightFunction::affine(k, 2, -1)},  {"i^2", WeightFunction(sq)}};
}

std::vector<WeightSearchRow> weight_search(const Gadget& gadget,
                                           const std::vector<std::pair<std::string, WeightFunction>>& candidates,
                                           const Budget& budget) {
  if (!gadget.dense) throw SizeError("weight search needs a materialized gadget");
  const int k = gadget.plane.k;
  const std::vector<Symbol> zero(static_cast<std::size_t>(gadget.plane.n), 0);
  std::vector<WeightSearchRow> rows;
  for (const auto& [name, raw] : candidates) {
    const Rational scale = Rational(k) / max_weight(gadget.canonical, raw);
    const auto w = raw.scaled(scale);
    WeightSearchRow row{name, w, max_weight(gadget.canonical, w), 0, 0};
    row.v = weighted::weighted_certificate_complexity(*gadget.dense, w, zero, std::nullopt, budget).weight;
    row.exponent = log_rational(row.v) / log_rational(row.u);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.exponent > b.exponent; });
  return rows;
}

}  // namespace sensilab::constructions
