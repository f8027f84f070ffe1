#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/parallel/kernels.hpp"
#include "sensilab/ratlp/rational.hpp"

namespace sensilab::suites {

/// Outcome of one claim over every instance it was checked on.
struct CheckRecord {
  std::string claim;
  std::string statement;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  /// Concrete counterexamples (function names or values), capped.
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  double seconds = 0;

  bool passed() const { return instances > 0 && failures == 0; }
  void record(bool ok, const std::string& witness);
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json params;
  std::vector<CheckRecord> checks;
  /// Failing functions, loadable by `sensilab measure`.
  std::vector<BooleanFunction> counterexamples;
  double seconds = 0;

  bool passed() const;
  const CheckRecord* find(const std::string& claim) const;
  nlohmann::json to_json() const;
  /// Fixed-width table: claim, instances, failures, status, time.
  std::string table() const;
};

struct SuiteParams {
  int n = 3;
  /// All 2^(2^n) functions; otherwise `samples` seeded random functions.
  bool exhaustive = false;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  /// Projective-plane orders for the gadget suite; the first one elsewhere.
  std::vector<int> q{2};
  int m = 1;
  std::string weights = "frac";
  std::vector<Rational> epsilons{Rational(0), Rational(1, 8)};
  /// Copies used by the desensitization suite (3, or 2k+1).
  std::vector<int> repetitions{3, 5};
  /// Samples per sampled collection check in the pipeline suite.
  std::uint64_t pipeline_samples = 2048;
  /// Whether corpus suites also run the named catalog functions.
  bool include_named = false;
  par::Exec exec = par::Exec::parallel;
  Budget budget = default_budget();

  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
/// Throws InputError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteParams& params);

/// The function with index `index` of the corpus: its truth table when
/// exhaustive, a seeded random table otherwise.
BooleanFunction corpus_function(int n, bool exhaustive, std::uint64_t seed, std::uint64_t index);
/// Number of corpus functions: 2^(2^n) when exhaustive, else `samples`.
std::uint64_t corpus_size(int n, bool exhaustive, std::uint64_t samples);

}  // namespace sensilab::suites
