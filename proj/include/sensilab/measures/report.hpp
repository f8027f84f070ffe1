#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/ratlp/rational.hpp"

namespace sensilab::measures {

/// Measure keys accepted by compute_report:
///   s s0 s1 bs bs0 bs1 bsk rc rc0 rc1 c c0 c1 d uc0 uc1 uc ucmin deg ts
///   degplus avdeg adeg
const std::vector<std::string>& measure_keys();

struct ReportOptions {
  std::set<std::string> measures;
  std::vector<int> bounded_block_sizes;  // for bsk
  Rational epsilon = 0;                  // avdeg, adeg
  bool exact_uc = true;                  // false: decision-tree upper bound
};

struct MeasureValue {
  std::optional<Rational> value;  // nullopt when skipped
  std::string skipped_reason;
  std::string witness_ref;
};

/// Values keyed by measure name ("bs_(2)" for bounded variants).
struct MeasureReport {
  std::string function_name;
  int arity = 0;
  std::map<std::string, MeasureValue> values;
  /// Witness collections keyed by witness_ref.
  std::map<std::string, CertificateCollection> witnesses;

  std::optional<Rational> get(const std::string& key) const;
  bool any_skipped() const;
  nlohmann::json to_json() const;
};

/// Computes the requested measures (expanding dependencies as needed) and
/// asserts the inequality chain over the values that are present.
MeasureReport compute_report(const BooleanFunction& f, const ReportOptions& options,
                             const Budget& budget = default_budget());

/// Human-readable descriptions of every violated chain inequality among the values present:
/// s <= bs <= rc <= c <= uc <= d, deg <= d, d <= ucmin^2, d <= bs*c, c <= bs^2, ts^2 >= d.
std::vector<std::string> chain_violations(const MeasureReport& report);

}  // namespace sensilab::measures
