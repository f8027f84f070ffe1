#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sensilab/constructions/catalog.hpp"
#include "sensilab/constructions/gadget.hpp"
#include "sensilab/constructions/pipeline.hpp"
#include "sensilab/constructions/plane.hpp"
#include "sensilab/constructions/realizer.hpp"
#include "sensilab/constructions/transforms.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/core/io.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/measures/decision_tree.hpp"
#include "sensilab/measures/report.hpp"
#include "sensilab/parallel/kernels.hpp"
#include "sensilab/ratlp/rational.hpp"
#include "sensilab/suites/suites.hpp"
#include "sensilab/weighted/certify.hpp"

namespace fs = std::filesystem;
using namespace sensilab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

/// A function file path, or a catalog name.
BooleanFunction load_boolean(const std::string& spec) {
  if (fs::exists(spec)) {
    const auto f = read_function(spec);
    if (!f.is_boolean()) throw InputError("'" + spec + "' is not a Boolean function");
    auto b = BooleanFunction::from_dense(f);
    b.set_name(f.name());
    return b;
  }
  return constructions::named_function(spec);
}

void write_boolean(const BooleanFunction& f, const fs::path& path) { write_function(f.to_dense(), path, true); }

void write_partials(const std::string& label, const std::vector<PartialAssignment>& ps, const fs::path& path) {
  write_collection(CertificateCollection::from_partial_assignments(label, ps), path);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- build --------------------------------------------------------------------

struct BuildArgs {
  std::string kind;
  int q = 2;
  int k = 1;
  int m = 1;
  int r = 3;
  std::string weights = "frac";
  std::string function;
  std::string outer;
  std::string inner;
  std::string out = ".";
  std::uint64_t samples = 2048;
  std::uint64_t seed = 0;
};

weighted::WeightFunction parse_weights(const std::string& text, int k) {
  if (text.find(',') == std::string::npos && text.find('/') == std::string::npos &&
      (text.empty() || !std::isdigit(static_cast<unsigned char>(text[0]))))
    return constructions::named_weights(text, k);
  std::vector<Rational> values;
  for (const auto& v : split(text)) values.push_back(parse_rational(v));
  return weighted::WeightFunction(values);
}

int cmd_build(const BuildArgs& a) {
  const fs::path out(a.out);
  json summary{{"kind", a.kind}};
  std::vector<std::string> files;
  if (a.kind == "plane") {
    const auto p = constructions::projective_plane(a.q);
    json j{{"q", p.q}, {"k", p.k}, {"n", p.n}, {"lines", p.lines}, {"slot_line", p.slot_line}};
    fs::create_directories(out);
    const auto file = out / ("plane-q" + std::to_string(a.q) + ".json");
    write_text_atomic(file, j.dump(1) + "\n");
    files.push_back(file.string());
    summary["points"] = p.n;
  } else if (a.kind == "gadget") {
    const auto g = constructions::goos_gadget(constructions::projective_plane(a.q));
    const auto w = parse_weights(a.weights, g.plane.k);
    summary["arity"] = g.plane.n;
    summary["alphabet"] = g.plane.k + 1;
    summary["weights"] = w.to_string();
    Rational u = 0;
    for (const auto& c : g.canonical.certificates) u = std::max(u, weighted::certificate_weight(c, w));
    summary["u"] = u.get_str();
    fs::create_directories(out);
    if (g.dense) {
      const std::vector<Symbol> zero(static_cast<std::size_t>(g.plane.n), 0);
      summary["v"] = weighted::weighted_certificate_complexity(*g.dense, w, zero).weight.get_str();
      const auto file = out / ("gadget-q" + std::to_string(a.q) + ".json");
      write_function(g.dense->renamed("gadget-q" + std::to_string(a.q)), file);
      files.push_back(file.string());
    } else {
      summary["note"] = "gadget too large to tabulate; only the collection is written";
    }
    const auto cfile = out / ("gadget-q" + std::to_string(a.q) + ".collection.json");
    write_collection(g.canonical, cfile);
    files.push_back(cfile.string());
  } else if (a.kind == "tight-family") {
    const auto t = constructions::tight_family(a.k);
    fs::create_directories(out);
    const std::string base = "tight-family-k" + std::to_string(a.k);
    write_boolean(t.function, out / (base + ".json"));
    write_partials(base, t.collection, out / (base + ".collection.json"));
    files = {(out / (base + ".json")).string(), (out / (base + ".collection.json")).string()};
    summary["arity"] = t.function.arity();
    summary["certificates"] = t.collection.size();
  } else if (a.kind == "desensitize") {
    if (a.function.empty()) throw InputError("desensitize needs --function");
    const auto f = load_boolean(a.function);
    const auto u = measures::decision_tree_depth(f).leaf_certificates(f.arity(), true);
    auto d = constructions::desensitize(f, u, a.r);
    const std::string base = "desensitized-" + f.name() + "-r" + std::to_string(a.r);
    d.function.set_name(base);
    fs::create_directories(out);
    write_boolean(d.function, out / (base + ".json"));
    write_partials(base, d.collection, out / (base + ".collection.json"));
    files = {(out / (base + ".json")).string(), (out / (base + ".collection.json")).string()};
    summary["arity"] = d.function.arity();
  } else if (a.kind == "compose") {
    if (a.outer.empty() || a.inner.empty()) throw InputError("compose needs --outer and --inner");
    const auto outer = load_boolean(a.outer), inner = load_boolean(a.inner);
    auto f = constructions::outer_compose(outer, inner);
    const std::string base = outer.name() + "-of-" + inner.name();
    f.set_name(base);
    fs::create_directories(out);
    write_boolean(f, out / (base + ".json"));
    files.push_back((out / (base + ".json")).string());
    summary["arity"] = f.arity();
  } else if (a.kind == "realizer") {
    const auto w = parse_weights(a.weights, a.k);
    const auto r = constructions::weight_realizer(w);
    fs::create_directories(out);
    write_function(r.function, out / "realizer.json");
    files.push_back((out / "realizer.json").string());
    for (std::size_t i = 0; i < r.collections.size(); ++i) {
      const auto file = out / ("realizer-" + std::to_string(i + 1) + ".collection.json");
      write_collection(r.collections[i], file);
      files.push_back(file.string());
    }
    summary["arity"] = r.function.arity();
  } else if (a.kind == "booleanize") {
    if (a.function.empty() || !fs::exists(a.function)) throw InputError("booleanize needs --function FILE");
    const auto f = read_function(a.function);
    if (f.output_alphabet() != 2) throw InputError("booleanize needs a Boolean-valued function");
    auto b = LazyFunction::booleanize(LazyFunction::dense(f), f.name() + "-bool").materialize_boolean();
    fs::create_directories(out);
    const auto file = out / (b.name() + ".json");
    write_boolean(b, file);
    files.push_back(file.string());
    summary["arity"] = b.arity();
  } else if (a.kind == "pipeline") {
    constructions::PipelineOptions o;
    o.q = a.q;
    o.m = a.m;
    o.weights = a.weights;
    o.samples = a.samples;
    o.seed = a.seed;
    const auto art = constructions::run_pipeline(o);
    art.write(out);
    files.push_back((out / "ledger.json").string());
    for (const auto& [file, c] : art.collections) files.push_back((out / file).string());
    summary = art.ledger();
    summary["files"] = files;
    print(summary);
    return art.passed() ? kOk : kFailed;
  } else {
    throw InputError("unknown build kind '" + a.kind + "'");
  }
  summary["files"] = files;
  print(summary);
  return kOk;
}

// ---- measure ------------------------------------------------------------------

struct MeasureArgs {
  std::string function;
  std::string measures = "s,bs,rc,c,uc,ucmin,d,deg";
  std::string epsilon = "0";
  std::string bsk;
  bool uc_upper = false;
  std::string out;
};

int cmd_measure(const MeasureArgs& a) {
  const auto f = load_boolean(a.function);
  measures::ReportOptions o;
  for (const auto& m : split(a.measures)) o.measures.insert(m);
  for (const auto& k : split(a.bsk)) o.bounded_block_sizes.push_back(std::stoi(k));
  o.epsilon = parse_rational(a.epsilon);
  o.exact_uc = !a.uc_upper;
  const auto report = measures::compute_report(f, o);
  const std::string text = report.to_json().dump(2) + "\n";
  if (a.out.empty()) std::cout << text;
  else write_text_atomic(a.out, text);
  return report.any_skipped() ? kBudget : kOk;
}

// ---- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  suites::SuiteParams params;
  std::string q = "2";
  std::string eps = "0,1/8";
  std::string reps = "3,5";
  bool serial = false;
  std::string json_out;
  std::string out;
};

int cmd_verify(VerifyArgs a) {
  auto& p = a.params;
  p.q.clear();
  for (const auto& v : split(a.q)) p.q.push_back(std::stoi(v));
  p.epsilons.clear();
  for (const auto& v : split(a.eps)) p.epsilons.push_back(parse_rational(v));
  p.repetitions.clear();
  for (const auto& v : split(a.reps)) p.repetitions.push_back(std::stoi(v));
  p.exec = a.serial ? par::Exec::serial : par::Exec::parallel;
  const auto result = suites::run_suite(a.suite, p);
  std::cout << result.table();
  if (!a.json_out.empty()) write_text_atomic(a.json_out, result.to_json().dump(2) + "\n");
  if (!a.out.empty() && !result.counterexamples.empty()) {
    fs::create_directories(a.out);
    for (const auto& f : result.counterexamples) write_boolean(f, fs::path(a.out) / (f.name() + ".json"));
  }
  return result.passed() ? kOk : kFailed;
}

// ---- sweep --------------------------------------------------------------------

struct SweepArgs {
  int n = 3;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  std::string measures = "s,bs,rc,c,uc,ucmin,d,deg";
  std::string output;
  std::string checkpoint;
  bool serial = false;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int cmd_sweep(const SweepArgs& a) {
  const bool exhaustive = a.sample == 0;
  if (exhaustive && a.n > 4) throw InputError("exhaustive sweeps need n <= 4; pass --sample for larger n");
  const auto total = suites::corpus_size(a.n, exhaustive, a.sample);
  const auto keys = split(a.measures);
  measures::ReportOptions o;
  for (const auto& k : keys) o.measures.insert(k);
  const std::string ckpt = a.checkpoint.empty() ? a.output + ".checkpoint" : a.checkpoint;
  const json identity{{"n", a.n}, {"sample", a.sample}, {"seed", a.seed}, {"measures", keys}};

  std::uint64_t next = 0, bytes = 0;
  if (fs::exists(ckpt) && fs::exists(a.output)) {
    std::ifstream in(ckpt);
    const json c = json::parse(in);
    if (c.at("identity") != identity) throw InputError("checkpoint '" + ckpt + "' belongs to a different sweep");
    next = c.at("next_index").get<std::uint64_t>();
    bytes = c.at("bytes").get<std::uint64_t>();
    if (fs::file_size(a.output) < bytes) throw InputError("output is shorter than its checkpoint");
    fs::resize_file(a.output, bytes);
  } else {
    std::string header = "index,table_hex";
    for (const auto& k : keys) header += "," + k;
    header += ",chain\n";
    std::ofstream(a.output, std::ios::trunc) << header;
    bytes = fs::file_size(a.output);
  }
  std::cerr << "sweep n=" << a.n << " rows=" << total << " seed=" << a.seed << " resume_at=" << next << "\n";
  const std::uint64_t chunk = 256;
  const auto exec = a.serial ? par::Exec::serial : par::Exec::parallel;
  bool budget_hit = false;
  while (next < total) {
    const std::uint64_t count = std::min(chunk, total - next);
    struct Line {
      std::string text;
      bool skipped = false;
    };
    auto lines = par::map_ordered<Line>(count, exec, [&](std::uint64_t j) {
      const std::uint64_t idx = next + j;
      const auto f = suites::corpus_function(a.n, exhaustive, a.seed, idx);
      Line line;
      line.text = std::to_string(idx) + "," + f.to_hex();
      try {
        const auto rep = measures::compute_report(f, o);
        for (const auto& k : keys) {
          const auto v = rep.get(k);
          line.text += "," + (v ? v->get_str() : std::string("skipped"));
        }
        line.skipped = rep.any_skipped();
        line.text += ",ok";
      } catch (const InvariantError& e) {
        for (std::size_t i = 0; i < keys.size(); ++i) line.text += ",";
        line.text += "," + csv_field(e.what());
      }
      line.text += "\n";
      return line;
    });
    {
      std::ofstream outf(a.output, std::ios::app);
      for (const auto& l : lines) {
        outf << l.text;
        budget_hit |= l.skipped;
      }
    }
    next += count;
    bytes = fs::file_size(a.output);
    write_text_atomic(ckpt, json{{"identity", identity}, {"next_index", next}, {"bytes", bytes}}.dump() + "\n");
  }
  return budget_hit ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensilab: exact Boolean-function complexity measures and gadget constructions"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "build a construction and write its files");
  b->add_option("kind", build.kind, "gadget | plane | tight-family | desensitize | compose | pipeline | realizer | booleanize")
      ->required();
  b->add_option("--q", build.q, "projective-plane order");
  b->add_option("--k", build.k, "tight-family parameter, or pointer count for named realizer weights");
  b->add_option("--m", build.m, "pipeline composition depth");
  b->add_option("--r", build.r, "desensitization copies (odd, >= 3)");
  b->add_option("--weights", build.weights, "frac | int | plus1 | const, or a comma list such as 1,2,2");
  b->add_option("--function", build.function, "function file or catalog name");
  b->add_option("--outer", build.outer, "outer function (compose)");
  b->add_option("--inner", build.inner, "inner function (compose)");
  b->add_option("--out", build.out, "output directory");
  b->add_option("--samples", build.samples, "samples per sampled check");
  b->add_option("--seed", build.seed, "seed for sampled checks");

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "compute measures of a function and print a JSON report");
  m->add_option("function", measure.function, "function file or catalog name")->required();
  m->add_option("--measures", measure.measures, "comma list of measure keys");
  m->add_option("--epsilon", measure.epsilon, "error for avdeg and adeg, as a rational");
  m->add_option("--bsk", measure.bsk, "block-size bounds for bsk, comma list");
  m->add_flag("--uc-upper", measure.uc_upper, "use the decision-tree upper bound for UC");
  m->add_option("--out", measure.out, "write the report here instead of standard output");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run a verification suite");
  v->add_option("suite", verify.suite, "rcuc | bsuc | desen | gadget | newweights | composition | pipeline | appendixA | chain | tree")
      ->required();
  v->add_option("--n", verify.params.n, "corpus arity");
  v->add_flag("--exhaustive", verify.params.exhaustive, "all functions of arity n");
  v->add_option("--samples", verify.params.samples, "number of seeded random functions");
  v->add_option("--seed", verify.params.seed, "seed");
  v->add_option("--q", verify.q, "plane orders, comma list");
  v->add_option("--m", verify.params.m, "pipeline depth");
  v->add_option("--weights", verify.params.weights, "pipeline weights");
  v->add_option("--eps", verify.eps, "epsilons for appendixA, comma list");
  v->add_option("--reps", verify.reps, "desensitization copies, comma list");
  v->add_option("--pipeline-samples", verify.params.pipeline_samples, "samples per sampled pipeline check");
  v->add_flag("--named", verify.params.include_named, "also run the catalog functions");
  v->add_flag("--serial", verify.serial, "run the serial reference path");
  v->add_option("--json", verify.json_out, "write the JSON result here");
  v->add_option("--out", verify.out, "directory for counterexample function files");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "tabulate measures of every (or sampled) function as CSV");
  s->add_option("--n", sweep.n, "arity")->required();
  s->add_option("--sample", sweep.sample, "number of seeded random functions (0: exhaustive)");
  s->add_option("--seed", sweep.seed, "seed");
  s->add_option("--measures", sweep.measures, "comma list of measure keys");
  s->add_option("--output", sweep.output, "CSV file")->required();
  s->add_option("--checkpoint", sweep.checkpoint, "checkpoint file (default OUTPUT.checkpoint)");
  s->add_flag("--serial", sweep.serial, "run the serial reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*b) return cmd_build(build);
    if (*m) return cmd_measure(measure);
    if (*v) return cmd_verify(verify);
    if (*s) return cmd_sweep(sweep);
  } catch (const SizeError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
