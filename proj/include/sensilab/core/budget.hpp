#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

namespace sensilab {

/// Resource limits shared by materialization and the exact searches.
///
/// Defaults can be overridden through the environment:
///   SENSILAB_DENSE_LIMIT     symbol-table entries for DenseFunction
///   SENSILAB_BIT_LIMIT       entries for bit-packed Boolean tables
///   SENSILAB_SCAN_LIMIT      points an exhaustive scan of a lazy function may visit
///   SENSILAB_TIME_LIMIT      seconds per exact search (0 disables)
struct Budget {
  std::uint64_t dense_entries = std::uint64_t{1} << 24;
  std::uint64_t boolean_bits = std::uint64_t{1} << 28;
  std::uint64_t scan_points = std::uint64_t{1} << 28;
  int decision_tree_arity = 16;
  int block_arity = 16;
  int uc_exact_arity = 5;
  int junta_arity = 5;
  int tree_sensitivity_arity = 16;
  double time_limit_seconds = 0.0;

  static Budget from_env();
};

const Budget& default_budget();

/// Deadline derived from Budget::time_limit_seconds; checks are cheap.
class SearchClock {
 public:
  explicit SearchClock(const Budget& budget);
  /// Throws SizeError once the deadline has passed.
  void check(const char* what);

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint32_t counter_ = 0;
};

}  // namespace sensilab
