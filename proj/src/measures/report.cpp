#include "sensilab/measures/report.hpp"

#include <algorithm>
#include <functional>

#include "sensilab/core/errors.hpp"
#include "sensilab/measures/blocks.hpp"
#include "sensilab/measures/decision_tree.hpp"
#include "sensilab/measures/degree.hpp"
#include "sensilab/measures/junta.hpp"
#include "sensilab/measures/tree_sensitivity.hpp"
#include "sensilab/measures/unambiguous.hpp"

namespace sensilab::measures {
namespace {

class Reporter {
 public:
  Reporter(const BooleanFunction& f, const ReportOptions& o, const Budget& b, MeasureReport& r)
      : f_(f), opt_(o), budget_(b), r_(r) {}

  void compute(const std::string& key) {
    if (r_.values.count(key)) return;
    try {
      dispatch(key);
    } catch (const SizeError& e) {
      r_.values[key].value.reset();
      r_.values[key].skipped_reason = e.what();
    }
  }

 private:
  void put(const std::string& key, Rational v, std::string witness = {}) {
    auto& m = r_.values[key];
    m.value = std::move(v);
    m.witness_ref = std::move(witness);
  }

  void put_collection(const std::string& ref, const std::vector<PartialAssignment>& ps) {
    r_.witnesses[ref] = CertificateCollection::from_partial_assignments(ref, ps);
  }

  void dispatch(const std::string& key) {
    if (key == "s" || key == "s0" || key == "s1") {
      const auto p = sensitivity_profile(f_);
      put("s", p.all, "input:" + std::to_string(p.argmax));
      put("s0", p.zero);
      put("s1", p.one);
    } else if (key == "bs" || key == "bs0" || key == "bs1") {
      const auto p = block_sensitivity_profile(f_, std::nullopt, budget_);
      const auto packing = block_sensitivity(f_, p.argmax, std::nullopt, budget_);
      std::vector<PartialAssignment> blocks;
      for (auto b : packing.blocks) {
        PartialAssignment q(f_.arity());
        for (int i = 0; i < f_.arity(); ++i)
          if ((b >> i) & 1u) q.set(i, 1);
        blocks.push_back(q);
      }
      put_collection("bs.blocks", blocks);
      put("bs", p.all, "bs.blocks@input:" + std::to_string(p.argmax));
      put("bs0", p.zero);
      put("bs1", p.one);
    } else if (key == "bsk") {
      for (int k : opt_.bounded_block_sizes) {
        const std::string name = "bs_(" + std::to_string(k) + ")";
        try {
          const auto p = block_sensitivity_profile(f_, k, budget_);
          put(name, p.all, "input:" + std::to_string(p.argmax));
          put(name + "0", p.zero);
          put(name + "1", p.one);
        } catch (const SizeError& e) {
          r_.values[name].skipped_reason = e.what();
        }
      }
    } else if (key == "rc" || key == "rc0" || key == "rc1") {
      const auto p = fractional_block_sensitivity_profile(f_, budget_);
      put("rc", p.all, "lp@input:" + std::to_string(p.argmax));
      put("rc0", p.zero);
      put("rc1", p.one);
    } else if (key == "c" || key == "c0" || key == "c1") {
      const auto p = certificate_profile(f_, budget_);
      const auto cert = certificate_complexity(f_, p.argmax, budget_);
      put_collection("c.certificate", {cert.certificate});
      put("c", p.all, "c.certificate");
      put("c0", p.zero);
      put("c1", p.one);
    } else if (key == "d") {
      const auto t = decision_tree_depth(f_, budget_);
      auto leaves = t.leaf_certificates(f_.arity(), false);
      const auto ones = t.leaf_certificates(f_.arity(), true);
      leaves.insert(leaves.end(), ones.begin(), ones.end());
      put_collection("d.leaves", leaves);
      put("d", t.depth, "d.leaves");
    } else if (key == "uc0" || key == "uc1" || key == "uc" || key == "ucmin") {
      const auto mode = opt_.exact_uc ? UcMode::exact : UcMode::upper;
      const auto r = uc_min(f_, mode, budget_);
      put_collection("uc0.collection", r.zero.collection);
      put_collection("uc1.collection", r.one.collection);
      put("uc0", r.zero.value, "uc0.collection");
      put("uc1", r.one.value, "uc1.collection");
      put("uc", std::max(r.zero.value, r.one.value), r.one.value >= r.zero.value ? "uc1.collection" : "uc0.collection");
      put("ucmin", r.value, r.side == 1 ? "uc1.collection" : "uc0.collection");
      r_.values["uc_mode"].witness_ref = opt_.exact_uc ? "exact" : "upper";
      r_.values["uc_mode"].value = opt_.exact_uc ? 1 : 0;
    } else if (key == "deg") {
      const auto p = degree(f_);
      put("deg", p.degree, "moebius");
    } else if (key == "ts") {
      const auto t = tree_sensitivity(f_, budget_);
      std::string w = "tree@" + std::to_string(t.root) + ":";
      for (const auto& e : t.edges) w += " " + std::to_string(e.from) + "^" + std::to_string(e.direction);
      put("ts", t.size, w);
    } else if (key == "degplus") {
      const auto r = conical_junta_degree(f_, JuntaVariant::exact, kMinSide, Rational(0), budget_);
      put("degplus", r.value, "junta:side" + std::to_string(r.side));
    } else if (key == "avdeg") {
      const auto r = conical_junta_degree(f_, JuntaVariant::average, kMinSide, opt_.epsilon, budget_);
      put("avdeg", r.value, "junta:side" + std::to_string(r.side) + ",eps=" + opt_.epsilon.get_str());
    } else if (key == "adeg") {
      const auto r = approx_degree(f_, opt_.epsilon, budget_);
      put("adeg", r.degree, "lp,eps=" + opt_.epsilon.get_str());
    } else {
      throw InputError("unknown measure '" + key + "'");
    }
  }

  const BooleanFunction& f_;
  const ReportOptions& opt_;
  const Budget& budget_;
  MeasureReport& r_;
};

}  // namespace

const std::vector<std::string>& measure_keys() {
  static const std::vector<std::string> keys = {"s",  "s0",  "s1",  "bs",  "bs0", "bs1", "bsk", "rc",
                                                "rc0", "rc1", "c",   "c0",  "c1",  "d",   "uc0", "uc1",
                                                "uc",  "ucmin", "deg", "ts", "degplus", "avdeg", "adeg"};
  return keys;
}

std::optional<Rational> MeasureReport::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) return std::nullopt;
  return it->second.value;
}

bool MeasureReport::any_skipped() const {
  return std::any_of(values.begin(), values.end(), [](const auto& kv) { return !kv.second.value.has_value(); });
}

nlohmann::json MeasureReport::to_json() const {
  nlohmann::json j;
  j["function"] = function_name;
  j["arity"] = arity;
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : values) {
    if (k == "uc_mode") continue;
    nlohmann::json e;
    if (v.value) {
      e["value"] = v.value->get_str();
      e["witness_ref"] = v.witness_ref;
    } else {
      e["value"] = "skipped";
      e["reason"] = v.skipped_reason;
    }
    m[k] = std::move(e);
  }
  if (const auto it = values.find("uc_mode"); it != values.end()) j["uc_mode"] = it->second.witness_ref;
  j["measures"] = std::move(m);
  return j;
}

MeasureReport compute_report(const BooleanFunction& f, const ReportOptions& options, const Budget& budget) {
  MeasureReport r;
  r.function_name = f.name();
  r.arity = f.arity();
  Reporter rep(f, options, budget, r);
  for (const auto& key : options.measures) {
    if (std::find(measure_keys().begin(), measure_keys().end(), key) == measure_keys().end())
      throw InputError("unknown measure '" + key + "'");
    rep.compute(key);
  }
  const auto bad = chain_violations(r);
  if (!bad.empty()) {
    std::string msg = "measure chain violated for '" + f.name() + "' (" + f.to_hex() + "):";
    for (const auto& b : bad) msg += " " + b + ";";
    throw InvariantError(msg);
  }
  return r;
}

std::vector<std::string> chain_violations(const MeasureReport& r) {
  std::vector<std::string> out;
  auto check = [&](const char* a, const char* b, const std::function<bool(const Rational&, const Rational&)>& ok,
                   const char* text) {
    const auto x = r.get(a);
    const auto y = r.get(b);
    if (x && y && !ok(*x, *y)) out.push_back(std::string(text) + " (" + x->get_str() + ", " + y->get_str() + ")");
  };
  const auto le = [](const Rational& x, const Rational& y) { return x <= y; };
  check("s", "bs", le, "s <= bs");
  check("bs", "rc", le, "bs <= rc");
  check("rc", "c", le, "rc <= c");
  check("c", "uc", le, "c <= uc");
  check("uc", "d", le, "uc <= d");
  check("deg", "d", le, "deg <= d");
  check("d", "ucmin", [](const Rational& d, const Rational& u) { return d <= u * u; }, "d <= ucmin^2");
  check("c", "bs", [](const Rational& c, const Rational& b) { return c <= b * b; }, "c <= bs^2");
  check("ts", "d", [](const Rational& t, const Rational& d) { return t * t >= d; }, "ts >= sqrt(d)");
  const auto d = r.get("d"), bs = r.get("bs"), c = r.get("c");
  if (d && bs && c && !(*d <= *bs * *c))
    out.push_back("d <= bs*c (" + d->get_str() + ", " + bs->get_str() + ", " + c->get_str() + ")");
  return out;
}

}  // namespace sensilab::measures
