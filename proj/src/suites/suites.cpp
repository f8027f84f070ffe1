#include "sensilab/suites/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>

#include "sensilab/constructions/catalog.hpp"
#include "sensilab/constructions/compose.hpp"
#include "sensilab/constructions/gadget.hpp"
#include "sensilab/constructions/pipeline.hpp"
#include "sensilab/constructions/plane.hpp"
#include "sensilab/constructions/transforms.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/core/random.hpp"
#include "sensilab/measures/blocks.hpp"
#include "sensilab/measures/decision_tree.hpp"
#include "sensilab/measures/degree.hpp"
#include "sensilab/measures/junta.hpp"
#include "sensilab/measures/report.hpp"
#include "sensilab/measures/tree_sensitivity.hpp"
#include "sensilab/measures/unambiguous.hpp"
#include "sensilab/ratlp/lp.hpp"
#include "sensilab/weighted/certify.hpp"

namespace sensilab::suites {
namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kMaxWitnesses = 8;
constexpr std::size_t kMaxCounterexamples = 16;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string str(const Rational& r) { return r.get_str(); }

// Per-function outcome of every claim of a corpus suite.
struct Row {
  std::vector<std::optional<bool>> ok;
  std::vector<std::string> detail;
  std::string error;
  bool size_error = false;
};

struct Claim {
  std::string id;
  std::string statement;
};

class Corpus {
 public:
  std::vector<BooleanFunction> functions;

  static Corpus from_params(const SuiteParams& p, int max_named_arity) {
    Corpus c;
    const auto count = corpus_size(p.n, p.exhaustive, p.samples);
    for (std::uint64_t i = 0; i < count; ++i) c.functions.push_back(corpus_function(p.n, p.exhaustive, p.seed, i));
    if (p.include_named)
      for (const auto& name : constructions::named_function_examples()) {
        auto f = constructions::named_function(name);
        if (f.arity() <= max_named_arity) c.functions.push_back(std::move(f));
      }
    return c;
  }
};

// Runs `fn` on every function (in parallel when requested) and folds the rows
// into one CheckRecord per claim in corpus order.
void run_corpus(SuiteResult& result, const std::vector<Claim>& claims, const std::vector<BooleanFunction>& fs,
                par::Exec exec, const std::function<void(const BooleanFunction&, Row&)>& fn) {
  const auto start = Clock::now();
  auto rows = par::map_ordered<Row>(fs.size(), exec, [&](std::uint64_t i) {
    Row row;
    row.ok.resize(claims.size());
    row.detail.resize(claims.size());
    try {
      fn(fs[i], row);
    } catch (const SizeError& e) {
      row.error = e.what();
      row.size_error = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
  for (const auto& row : rows)
    if (row.size_error) throw SizeError(row.error);
  const double seconds = since(start);
  for (std::size_t c = 0; c < claims.size(); ++c) {
    CheckRecord rec;
    rec.claim = claims[c].id;
    rec.statement = claims[c].statement;
    rec.seconds = seconds;
    result.checks.push_back(std::move(rec));
  }
  const std::size_t base = result.checks.size() - claims.size();
  std::vector<char> failed(fs.size(), 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& row = rows[i];
    const std::string who = fs[i].name() + " [" + fs[i].to_hex() + "]";
    if (!row.error.empty()) {
      auto& rec = result.checks[base];
      rec.record(false, who + ": " + row.error);
      failed[i] = 1;
      continue;
    }
    for (std::size_t c = 0; c < claims.size(); ++c) {
      if (!row.ok[c]) continue;
      const std::string w = row.detail[c].empty() ? who : who + ": " + row.detail[c];
      result.checks[base + c].record(*row.ok[c], w);
      if (!*row.ok[c]) failed[i] = 1;
    }
  }
  for (std::size_t i = 0; i < fs.size() && result.counterexamples.size() < kMaxCounterexamples; ++i)
    if (failed[i]) result.counterexamples.push_back(fs[i]);
}

CheckRecord single(const std::string& claim, const std::string& statement, bool ok, const std::string& witness,
                   Clock::time_point start) {
  CheckRecord rec;
  rec.claim = claim;
  rec.statement = statement;
  rec.record(ok, witness);
  rec.seconds = since(start);
  return rec;
}

// ---- rcuc / bsuc -------------------------------------------------------------

SuiteResult rcuc_like(const SuiteParams& p, bool use_rc) {
  SuiteResult r;
  r.suite = use_rc ? "rcuc" : "bsuc";
  auto corpus = Corpus::from_params(p, 6);
  if (!p.exhaustive) {
    corpus.functions.push_back(BooleanFunction::from_predicate(p.n, [](std::uint64_t) { return false; }, "zero"));
    corpus.functions.push_back(BooleanFunction::from_predicate(p.n, [](std::uint64_t) { return true; }, "one"));
  }
  const std::string lhs = use_rc ? "RC" : "bs";
  const std::vector<Claim> claims = {
      {lhs == "RC" ? "rc<=2ucmin-1" : "bs<=2ucmin-1", lhs + "(f) <= 2 UC_min(f) - 1 for non-constant f (exact)"},
      {"constant-degenerate", lhs + "(f) = UC_min(f) = 0 for constant f"},
  };
  run_corpus(r, claims, corpus.functions, p.exec, [&](const BooleanFunction& f, Row& row) {
    const Rational lhs_value = use_rc ? measures::fractional_block_sensitivity_profile(f, p.budget).all
                                      : Rational(measures::block_sensitivity_profile(f, std::nullopt, p.budget).all);
    const int uc = measures::uc_min(f, measures::UcMode::exact, p.budget).value;
    const std::string d = lhs + " = " + str(lhs_value) + ", UC_min = " + std::to_string(uc);
    if (f.is_constant()) {
      row.ok[1] = lhs_value == 0 && uc == 0;
      row.detail[1] = d;
    } else {
      row.ok[0] = lhs_value <= Rational(2 * uc - 1);
      row.detail[0] = d;
    }
  });
  return r;
}

// ---- desen -------------------------------------------------------------------

std::vector<BooleanFunction> desensitization_corpus(const SuiteParams& p, int max_arity) {
  std::vector<BooleanFunction> out;
  for (const auto& name : constructions::named_function_examples()) {
    auto f = constructions::named_function(name);
    if (f.arity() <= max_arity && !f.is_constant()) out.push_back(std::move(f));
  }
  for (std::uint64_t i = 0; out.size() < p.samples; ++i) {
    const int n = 2 + static_cast<int>(i % static_cast<std::uint64_t>(max_arity - 1));
    auto f = corpus_function(n, false, p.seed, i);
    if (!f.is_constant()) out.push_back(std::move(f));
  }
  return out;
}

int max_size(const std::vector<PartialAssignment>& c) {
  int m = 0;
  for (const auto& q : c) m = std::max(m, q.size());
  return m;
}

SuiteResult desen(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "desen";
  for (int reps : p.repetitions) {
    if (reps < 3 || reps % 2 == 0) throw InputError("repetitions must be odd and at least 3");
    // Three copies run on the full corpus (n <= 4); more copies on the first ten functions with n <= 2.
    const int max_arity = reps == 3 ? 4 : 2;
    const auto corpus = desensitization_corpus(p, 4);
    std::vector<BooleanFunction> fs;
    for (const auto& f : corpus)
      if (f.arity() <= max_arity && (reps == 3 || fs.size() < 10)) fs.push_back(f);
    const std::string tag = "[r=" + std::to_string(reps) + "]";
    const std::vector<Claim> claims = {
        {"s0(f')=1" + tag, "the desensitized function has 0-sensitivity exactly 1"},
        {"uc1-witness" + tag, "f' has a verified unambiguous 1-collection of size <= r times the leaf collection of f"},
        {"D(f')>=D(f)" + tag, "decision-tree depth does not decrease"},
        {"bs(f')>=bs(f)" + tag, "block sensitivity does not decrease"},
        {"C(f')>=C(f)" + tag, "certificate complexity does not decrease"},
        {"deg(f')>=deg(f)" + tag, "degree does not decrease"},
    };
    run_corpus(r, claims, fs, p.exec, [&](const BooleanFunction& f, Row& row) {
      const auto tree = measures::decision_tree_depth(f, p.budget);
      const auto u = tree.leaf_certificates(f.arity(), true);
      const auto d = constructions::desensitize(f, u, reps, p.budget);
      const auto& g = d.function;
      const int s0 = measures::sensitivity_profile(g).zero;
      row.ok[0] = s0 == 1;
      row.detail[0] = "s0(f') = " + std::to_string(s0);
      std::string why;
      const bool unambiguous = measures::is_unambiguous_collection(g, 1, d.collection, &why);
      const int before = max_size(u), after = max_size(d.collection);
      row.ok[1] = unambiguous && after <= reps * before;
      row.detail[1] = unambiguous ? "sizes " + std::to_string(after) + " vs " + std::to_string(before) : why;
      const int df = tree.depth, dg = measures::decision_tree_depth(g, p.budget).depth;
      row.ok[2] = dg >= df;
      row.detail[2] = std::to_string(dg) + " vs " + std::to_string(df);
      const int bf = measures::block_sensitivity_profile(f, std::nullopt, p.budget).all;
      const int bg = measures::block_sensitivity_profile(g, std::nullopt, p.budget).all;
      row.ok[3] = bg >= bf;
      row.detail[3] = std::to_string(bg) + " vs " + std::to_string(bf);
      const int cf = measures::certificate_profile(f, p.budget).all;
      const int cg = measures::certificate_profile(g, p.budget).all;
      row.ok[4] = cg >= cf;
      row.detail[4] = std::to_string(cg) + " vs " + std::to_string(cf);
      const int degf = measures::degree(f).degree, degg = measures::degree(g).degree;
      row.ok[5] = degg >= degf;
      row.detail[5] = std::to_string(degg) + " vs " + std::to_string(degf);
    });
  }
  return r;
}

// ---- gadget / newweights -------------------------------------------------------

SuiteResult gadget(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "gadget";
  for (int q : p.q) {
    const auto start = Clock::now();
    const std::string tag = "[q=" + std::to_string(q) + "]";
    const auto plane = constructions::projective_plane(q);
    std::string why;
    const bool axioms = constructions::verify_plane_axioms(plane, &why);
    r.checks.push_back(single("plane-axioms" + tag, "q^2+q+1 points, lines of q+1 points, two lines meet once, two points share one line",
                              axioms, why, start));
    why.clear();
    const bool rainbow = constructions::verify_rainbow(plane, &why);
    r.checks.push_back(single("rainbow" + tag, "each line receives distinct slot numbers from its points", rainbow, why, start));
    const auto g = constructions::goos_gadget(plane, p.budget);
    const int k = plane.k, n = plane.n;
    std::vector<Symbol> zero(static_cast<std::size_t>(n), 0);
    if (!g.dense) {
      auto rec = single("canonical-structural" + tag, "canonical collection is simple and pairwise inconsistent",
                        weighted::pairwise_inconsistent(g.canonical.certificates), "", start);
      rec.notes.push_back("gadget has (k+1)^n points; values are not computed");
      r.checks.push_back(std::move(rec));
      continue;
    }
    for (const bool frac : {false, true}) {
      const auto w = frac ? constructions::fractional_weights(k) : constructions::integer_weights(k);
      const std::string wt = frac ? "frac" : "int";
      const auto v = weighted::verify_collection(*g.dense, g.canonical, 1, &w);
      const Rational want_u = frac ? Rational(k) : Rational(k * (k + 1) / 2);
      Rational want_v = frac ? Rational(2 * n, k + 1) : Rational(n);
      want_v.canonicalize();
      const auto c0 = weighted::weighted_certificate_complexity(*g.dense, w, zero, std::nullopt, p.budget).weight;
      r.checks.push_back(single("collection" + tag + "[" + wt + "]", "canonical collection is a verified unambiguous simple 1-collection",
                                v.ok() && v.simple, v.failures.empty() ? "" : v.failures.front(), start));
      r.checks.push_back(single("u" + tag + "[" + wt + "]", "collection weight u = " + str(want_u),
                                v.max_weight && *v.max_weight == want_u,
                                "measured " + (v.max_weight ? str(*v.max_weight) : std::string("none")), start));
      r.checks.push_back(single("v" + tag + "[" + wt + "]", "weighted C(0^n) = " + str(want_v), c0 == want_v,
                                "measured " + str(c0), start));
    }
  }
  return r;
}

SuiteResult newweights(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "newweights";
  const auto start = Clock::now();
  const int q = p.q.empty() ? 2 : p.q.front();
  const auto g = constructions::goos_gadget(constructions::projective_plane(q), p.budget);
  if (!g.dense) throw SizeError("newweights needs a materialized gadget (q <= 2)");
  const int k = g.plane.k, n = g.plane.n;
  const auto w = constructions::fractional_weights(k);
  const auto v = weighted::verify_collection(*g.dense, g.canonical, 1, &w);
  const auto c0 = weighted::weighted_certificate_complexity(*g.dense, w, std::vector<Symbol>(static_cast<std::size_t>(n), 0),
                                                            std::nullopt, p.budget).weight;
  Rational want_v(2 * n, k + 1);
  want_v.canonicalize();
  r.checks.push_back(single("u=k", "w(i) = 2i/(k+1) gives a verified collection of weight k = " + std::to_string(k),
                            v.ok() && v.max_weight && *v.max_weight == k, v.max_weight ? str(*v.max_weight) : "", start));
  r.checks.push_back(single("v=2n/(k+1)", "weighted C(0^n) = " + str(want_v), c0 == want_v, str(c0), start));
  const auto rows = constructions::weight_search(g, constructions::default_weight_candidates(k), p.budget);
  CheckRecord rec;
  rec.claim = "weight-search-linear";
  rec.statement = "the linear weighting reaches exponent log v / log u";
  for (const auto& row : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: u=%s v=%s exponent=%.12Lf", row.name.c_str(), str(row.u).c_str(),
                  str(row.v).c_str(), row.exponent);
    rec.notes.push_back(buf);
    if (row.name == "i") {
      const long double want = std::log(static_cast<long double>(c0.get_d())) / std::log(static_cast<long double>(k));
      rec.record(std::fabs(row.exponent - want) < 1e-12L, buf);
    }
  }
  const auto lin = std::find_if(rows.begin(), rows.end(), [](const auto& x) { return x.name == "i"; });
  const auto plus1 = std::find_if(rows.begin(), rows.end(), [](const auto& x) { return x.name == "i+1"; });
  if (lin != rows.end() && plus1 != rows.end())
    rec.notes.push_back(std::string("i+1 ") + (plus1->exponent > lin->exponent ? "beats" : "does not beat") +
                        " i on this gadget (empirical)");
  rec.seconds = since(start);
  r.checks.push_back(std::move(rec));
  return r;
}

// ---- composition ---------------------------------------------------------------

SuiteResult composition(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "composition";
  const auto start = Clock::now();
  const auto g = constructions::goos_gadget(constructions::projective_plane(1), p.budget);
  const int k = g.plane.k;
  const auto w = constructions::fractional_weights(k);
  const auto u = weighted::verify_collection(*g.dense, g.canonical, 1, &w);
  r.checks.push_back(single("inner-collection", "U is a verified unambiguous simple 1-collection of the triangle gadget",
                            u.ok() && u.simple, "", start));
  const int s = u.max_size;
  const Rational big_w = *u.max_weight;
  const auto& h = g;
  const auto& w0 = w;
  const auto hv = weighted::verify_collection(*h.dense, h.canonical, 1, &w0);
  const int kh = hv.max_size;
  const Rational uh = *hv.max_weight;
  const std::vector<Symbol> zero3(3, 0);
  const Rational vh = weighted::weighted_certificate_complexity(*h.dense, w0, zero3, std::nullopt, p.budget).weight;
  const Rational cf0 = weighted::weighted_certificate_complexity(*g.dense, w, zero3, std::nullopt, p.budget).weight;

  const auto ext = constructions::extend_output(weighted::WeightedFunction(g.function, w), u, k, w0);
  const auto tilde = ext.tilde.function.materialize(p.budget);
  for (int i = 1; i <= k; ++i) {
    const auto vi = weighted::verify_collection(tilde, ext.by_output[i - 1], i, &ext.tilde.weight);
    const Rational bound = w0(i) * big_w;
    r.checks.push_back(single("B1[i=" + std::to_string(i) + "]",
                              "certificates for tilde-f = i are verified and weigh <= w0(i) W = " + str(bound),
                              vi.ok() && vi.max_weight && *vi.max_weight <= bound,
                              "weight " + (vi.max_weight ? str(*vi.max_weight) : std::string("none")), start));
    SymbolSet others;
    for (int o = 0; o < tilde.output_alphabet(); ++o)
      if (o != i) others.insert(o);
    const Rational c = weighted::weighted_certificate_complexity(tilde, ext.tilde.weight, zero3, others, p.budget).weight;
    const Rational need = w0(i) * cf0;
    r.checks.push_back(single("B2[i=" + std::to_string(i) + "]",
                              "certifying tilde-f != i at 0 costs >= w0(i) C((f,w),0) = " + str(need), c >= need,
                              "measured " + str(c), start));
  }

  const auto comp = constructions::compose_weighted(h.function, h.canonical, ext);
  const auto dense = comp.function.function.materialize(p.budget);
  const auto cv = weighted::verify_collection(dense, comp.collection, 1, &comp.function.weight);
  const Rational wbound = uh * big_w;
  CheckRecord a1 = single("A1", "composed collection is verified, size <= s k = " + std::to_string(s * kh) +
                                    " and weight <= u W = " + str(wbound),
                          cv.ok() && cv.max_size <= s * kh && cv.max_weight && *cv.max_weight <= wbound,
                          "size " + std::to_string(cv.max_size) + ", weight " +
                              (cv.max_weight ? str(*cv.max_weight) : std::string("none")),
                          start);
  a1.notes.push_back(std::to_string(comp.collection.certificates.size()) + " certificates over " +
                     std::to_string(dense.size()) + " points");
  r.checks.push_back(std::move(a1));
  const Rational c0 = weighted::weighted_certificate_complexity(
                          dense, comp.function.weight, std::vector<Symbol>(static_cast<std::size_t>(dense.arity()), 0),
                          std::nullopt, p.budget)
                          .weight;
  r.checks.push_back(single("A2", "weighted C of the composed 0-input >= v C((f,w),0) = " + str(vh * cf0), c0 >= vh * cf0,
                            "measured " + str(c0), start));
  return r;
}

// ---- pipeline ------------------------------------------------------------------

SuiteResult pipeline(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "pipeline";
  const auto start = Clock::now();
  constructions::PipelineOptions o;
  o.q = p.q.empty() ? 2 : p.q.front();
  o.m = p.m;
  o.weights = p.weights;
  o.samples = p.pipeline_samples;
  o.seed = p.seed;
  o.budget = p.budget;
  const auto art = constructions::run_pipeline(o);
  for (const auto& st : art.stages)
    for (const auto& [name, ok] : st.checks) {
      CheckRecord rec = single(st.name + ":" + name, st.name + " " + name + " (" + to_string(st.verification) + ")", ok,
                               st.name, start);
      r.checks.push_back(std::move(rec));
    }
  char buf[128];
  std::snprintf(buf, sizeof buf, "u=%s v=%s exponent=%.12Lf", str(art.u).c_str(), str(art.v).c_str(), art.exponent());
  if (!r.checks.empty()) r.checks.front().notes.push_back(buf);
  return r;
}

// ---- appendixA -------------------------------------------------------------------

SuiteResult appendix_a(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "appendixA";
  const auto corpus = Corpus::from_params(p, 4);
  std::vector<Claim> claims;
  for (const auto& e : p.epsilons) {
    if (e < 0 || e >= Rational(1, 4)) throw InputError("epsilon must lie in [0, 1/4)");
    claims.push_back({"rc<=(2avdeg-1)/(1-4eps)[eps=" + str(e) + "]",
                      "RC(f) <= (2 avdeg+_min,eps(f) - 1) / (1 - 4 eps) for non-constant f"});
  }
  claims.push_back({"avdeg<=degplus<=ucmin", "avdeg+_min(f) <= deg+_min(f) <= UC_min(f) at eps = 0"});
  run_corpus(r, claims, corpus.functions, p.exec, [&](const BooleanFunction& f, Row& row) {
    if (f.is_constant()) return;
    const Rational rc = measures::fractional_block_sensitivity_profile(f, p.budget).all;
    for (std::size_t e = 0; e < p.epsilons.size(); ++e) {
      const Rational& eps = p.epsilons[e];
      const Rational av =
          measures::conical_junta_degree(f, measures::JuntaVariant::average, measures::kMinSide, eps, p.budget).value;
      const Rational bound = (2 * av - 1) / (1 - 4 * eps);
      row.ok[e] = rc <= bound;
      row.detail[e] = "RC = " + str(rc) + ", avdeg+ = " + str(av);
    }
    const Rational av0 =
        measures::conical_junta_degree(f, measures::JuntaVariant::average, measures::kMinSide, Rational(0), p.budget).value;
    const Rational dp =
        measures::conical_junta_degree(f, measures::JuntaVariant::exact, measures::kMinSide, Rational(0), p.budget).value;
    const int uc = measures::uc_min(f, measures::UcMode::exact, p.budget).value;
    const std::size_t last = p.epsilons.size();
    row.ok[last] = av0 <= dp && dp <= uc;
    row.detail[last] = str(av0) + " <= " + str(dp) + " <= " + std::to_string(uc);
  });
  return r;
}

// ---- chain / tree ------------------------------------------------------------------

SuiteResult chain(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "chain";
  const auto corpus = Corpus::from_params(p, 6);
  const std::vector<Claim> claims = {
      {"report", "every measure computes and the report's own chain check passes (UC exact up to the search arity, else the decision-tree bound)"},
      {"s<=bs", "s <= bs"},
      {"bs<=rc", "bs <= RC"},
      {"rc<=c", "RC <= C"},
      {"c<=uc", "C <= UC"},
      {"uc<=d", "UC <= D"},
      {"deg<=d", "deg <= D"},
      {"d<=ucmin^2", "D <= UC_min^2"},
      {"d<=bs*c", "D <= bs C"},
      {"c<=bs^2", "C <= bs^2"},
      {"ts>=sqrt(d)", "ts^2 >= D"},
      {"packing=hitting", "fractional packing and hitting optima agree exactly at every input"},
  };
  measures::ReportOptions ro;
  ro.measures = {"s", "bs", "rc", "c", "uc", "ucmin", "d", "deg", "ts"};
  run_corpus(r, claims, corpus.functions, p.exec, [&](const BooleanFunction& f, Row& row) {
    measures::MeasureReport rep;
    auto opts = ro;
    opts.exact_uc = f.arity() <= p.budget.uc_exact_arity;
    try {
      rep = measures::compute_report(f, opts, p.budget);
      row.ok[0] = true;
    } catch (const InvariantError& e) {
      row.ok[0] = false;
      row.detail[0] = e.what();
      return;
    }
    auto v = [&](const char* key) { return *rep.get(key); };
    auto check = [&](std::size_t i, bool ok, const Rational& a, const Rational& b) {
      row.ok[i] = ok;
      row.detail[i] = str(a) + " vs " + str(b);
    };
    const Rational s = v("s"), bs = v("bs"), rc = v("rc"), c = v("c"), uc = v("uc"), d = v("d"), deg = v("deg"),
                   ucmin = v("ucmin"), ts = v("ts");
    check(1, s <= bs, s, bs);
    check(2, bs <= rc, bs, rc);
    check(3, rc <= c, rc, c);
    check(4, c <= uc, c, uc);
    check(5, uc <= d, uc, d);
    check(6, deg <= d, deg, d);
    check(7, d <= ucmin * ucmin, d, ucmin);
    check(8, d <= bs * c, d, bs * c);
    check(9, c <= bs * bs, c, bs);
    check(10, ts * ts >= d, ts, d);
    bool dual = true;
    std::string where;
    for (std::uint64_t x = 0; x < f.size() && dual; ++x) {
      const auto blocks = measures::minimal_block_masks(f, x, p.budget);
      if (blocks.empty()) continue;
      const auto pack = lp::solve(measures::packing_program(blocks, f.arity()));
      const auto hit = lp::solve(measures::hitting_program(blocks, f.arity()));
      dual = pack.status == lp::Status::optimal && hit.status == lp::Status::optimal && pack.value == hit.value;
      if (!dual) where = "x = " + std::to_string(x) + ": " + str(pack.value) + " vs " + str(hit.value);
    }
    row.ok[11] = dual;
    row.detail[11] = where;
  });
  return r;
}

SuiteResult tree(const SuiteParams& p) {
  SuiteResult r;
  r.suite = "tree";
  const auto corpus = Corpus::from_params(p, 6);
  const std::vector<Claim> claims = {
      {"tree-valid", "the reported sensitive tree uses sensitive edges with distinct directions"},
      {"ts>=s", "ts >= s"},
      {"ts>=sqrt(d)", "ts^2 >= D"},
  };
  run_corpus(r, claims, corpus.functions, p.exec, [&](const BooleanFunction& f, Row& row) {
    const auto t = measures::tree_sensitivity(f, p.budget);
    row.ok[0] = measures::is_sensitive_tree(f, t);
    const int s = measures::sensitivity_profile(f).all;
    row.ok[1] = t.size >= s;
    row.detail[1] = std::to_string(t.size) + " vs " + std::to_string(s);
    const int d = measures::decision_tree_depth(f, p.budget).depth;
    row.ok[2] = t.size * t.size >= d;
    row.detail[2] = std::to_string(t.size) + "^2 vs " + std::to_string(d);
  });
  return r;
}

}  // namespace

void CheckRecord::record(bool ok, const std::string& witness) {
  ++instances;
  if (ok) return;
  ++failures;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness);
}

bool SuiteResult::passed() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed(); });
}

const CheckRecord* SuiteResult::find(const std::string& claim) const {
  for (const auto& c : checks)
    if (c.claim == claim) return &c;
  return nullptr;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["params"] = params;
  j["passed"] = passed();
  j["seconds"] = seconds;
  auto& cs = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"claim", c.claim},
                  {"statement", c.statement},
                  {"instances", c.instances},
                  {"failures", c.failures},
                  {"passed", c.passed()},
                  {"witnesses", c.witnesses},
                  {"notes", c.notes},
                  {"seconds", c.seconds}});
  auto& ce = j["counterexamples"] = nlohmann::json::array();
  for (const auto& f : counterexamples) ce.push_back({{"name", f.name()}, {"arity", f.arity()}, {"table_hex", f.to_hex()}});
  return j;
}

std::string SuiteResult::table() const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.claim.size());
  std::ostringstream out;
  char buf[96];
  out << suite << " (seed " << seed << ")\n";
  out << std::string(width, '-') << "  ---------  --------  ------  --------\n";
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "  %9llu  %8llu  %-6s  %7.2fs", static_cast<unsigned long long>(c.instances),
                  static_cast<unsigned long long>(c.failures), c.passed() ? "pass" : "FAIL", c.seconds);
    out << c.claim << std::string(width - c.claim.size(), ' ') << buf << "\n";
    for (const auto& n : c.notes) out << "    " << n << "\n";
    for (const auto& w : c.witnesses) out << "    counterexample: " << w << "\n";
  }
  out << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

nlohmann::json SuiteParams::to_json() const {
  nlohmann::json eps = nlohmann::json::array();
  for (const auto& e : epsilons) eps.push_back(e.get_str());
  return {{"n", n},           {"exhaustive", exhaustive},   {"samples", samples}, {"seed", seed},
          {"q", q},           {"m", m},                     {"weights", weights}, {"epsilons", eps},
          {"repetitions", repetitions}, {"pipeline_samples", pipeline_samples}, {"include_named", include_named}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"rcuc",     "bsuc",     "desen",     "gadget", "newweights",
                                                  "composition", "pipeline", "appendixA", "chain",  "tree"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteParams& params) {
  if (params.exhaustive && params.n > 4) throw InputError("exhaustive corpora need n <= 4");
  if (params.n < 1 || params.n > 6) throw InputError("corpus arity must be in [1, 6]");
  const auto start = Clock::now();
  SuiteResult r;
  if (name == "rcuc") r = rcuc_like(params, true);
  else if (name == "bsuc") r = rcuc_like(params, false);
  else if (name == "desen") r = desen(params);
  else if (name == "gadget") r = gadget(params);
  else if (name == "newweights") r = newweights(params);
  else if (name == "composition") r = composition(params);
  else if (name == "pipeline") r = pipeline(params);
  else if (name == "appendixA") r = appendix_a(params);
  else if (name == "chain") r = chain(params);
  else if (name == "tree") r = tree(params);
  else throw InputError("unknown suite '" + name + "'");
  r.seed = params.seed;
  r.params = params.to_json();
  r.seconds = since(start);
  return r;
}

std::uint64_t corpus_size(int n, bool exhaustive, std::uint64_t samples) {
  if (!exhaustive) return samples;
  if (n > 4) throw InputError("exhaustive corpora need n <= 4");
  return std::uint64_t{1} << (1u << n);
}

BooleanFunction corpus_function(int n, bool exhaustive, std::uint64_t seed, std::uint64_t index) {
  if (n < 1 || n > 6) throw InputError("corpus arity must be in [1, 6]");
  std::uint64_t table = index;
  std::string name = "n" + std::to_string(n) + "-" + std::to_string(index);
  if (!exhaustive) {
    auto rng = stream_rng(seed, index);
    table = rng();
    name = "n" + std::to_string(n) + "-s" + std::to_string(seed) + "-" + std::to_string(index);
  }
  return BooleanFunction::from_predicate(n, [table](std::uint64_t x) { return (table >> x) & 1u; }, name);
}

}  // namespace sensilab::suites
