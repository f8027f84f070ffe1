#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sensilab/constructions/gadget.hpp"
#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/weighted/weights.hpp"

namespace sensilab::constructions {

enum class Verification { exhaustive, sampled, structural };
const char* to_string(Verification v);

struct StageRecord {
  std::string name;
  int arity = 0;
  int alphabet = 0;
  std::optional<Rational> u;  // certificate-collection weight (or size) bound
  std::optional<Rational> v;  // lower bound on the 0-input certificate weight (or size)
  std::optional<Rational> measured_u;
  std::optional<Rational> measured_v;
  std::string collection_file;
  Verification verification = Verification::structural;
  /// Recorded input length and the bound it is compared against.
  std::string input_length;      // decimal, may exceed 64 bits
  std::string input_length_bound;
  std::map<std::string, bool> checks;
  std::vector<std::string> notes;
};

struct PipelineOptions {
  int q = 2;
  std::string weights = "frac";  // frac | int | plus1 | const
  int m = 1;
  std::uint64_t samples = 2048;
  std::uint64_t seed = 0;
  /// Exact Boolean checks on h'_1 (bit table up to Budget::boolean_bits).
  bool exact_boolean = true;
  Budget budget = default_budget();
};

struct PipelineArtifact {
  PipelineOptions options;
  int k = 0;
  int n = 0;
  weighted::WeightFunction w0;
  Rational u;
  Rational v;
  bool gadget_values_computed = false;  // false: u, v taken from the closed forms
  std::vector<StageRecord> stages;
  std::map<std::string, CertificateCollection> collections;  // keyed by file name
  LazyFunction h_m;
  LazyFunction h_double_prime;
  LazyFunction h_prime;
  std::optional<BooleanFunction> h_prime_table;

  bool passed() const;
  /// log v / log u.
  long double exponent() const;
  nlohmann::json ledger() const;
  /// Writes the ledger plus every collection file into `dir`.
  void write(const std::filesystem::path& dir) const;
};

/// Gadget -> iterated extend/compose (m levels) -> round -> realize weights -> Booleanize.
PipelineArtifact run_pipeline(const PipelineOptions& options);

weighted::WeightFunction named_weights(const std::string& name, int k);

struct WeightSearchRow {
  std::string name;
  weighted::WeightFunction weights;
  Rational u;
  Rational v;
  long double exponent = 0;
};

/// For each candidate (scaled so that the canonical collection weighs k),
/// computes its weight u and the exact weighted C(0^n) v; rows sorted by exponent, best first.
std::vector<WeightSearchRow> weight_search(const Gadget& gadget,
                                           const std::vector<std::pair<std::string, weighted::WeightFunction>>& candidates,
                                           const Budget& budget = default_budget());
/// The default candidates: const, i, i+1, i+2, 2i-1, i^2.
std::vector<std::pair<std::string, weighted::WeightFunction>> default_weight_candidates(int k);

}  // namespace sensilab::constructions
