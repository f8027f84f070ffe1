#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/box.hpp"
#include "sensilab/core/budget.hpp"
#include "sensilab/core/dense_function.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/weighted/weights.hpp"

namespace sensilab::weighted {

enum class Coverage { exhaustive, sampled };
const char* to_string(Coverage c);

struct CertifyResult {
  bool holds = false;
  Coverage coverage = Coverage::exhaustive;
  std::uint64_t points_checked = 0;
  std::vector<Symbol> counterexample;  // empty when holds
};

/// Every point of `box` has f-value in `targets`.
bool is_certificate(const DenseFunction& f, const BoxCertificate& box, const SymbolSet& targets);
/// Exhaustive when the box volume fits budget.scan_points, otherwise `samples`
/// seeded random points of the box (reported as sampled, never as a proof).
CertifyResult is_certificate(const LazyFunction& f, const BoxCertificate& box,
                             const SymbolSet& targets, std::uint64_t samples = 4096,
                             std::uint64_t seed = 0, const Budget& budget = default_budget());

struct WeightedCertificate {
  Rational weight;
  BoxCertificate box;
};

/// Minimum weight of a box containing x all of whose points map into `targets`
/// (default {f(x)}). Coordinates with x_i = 0 range over threshold sets
/// {0} u {s : w(s) > theta}; coordinates with x_i != 0 over {full, {x_i}}.
WeightedCertificate weighted_certificate_complexity(const DenseFunction& f, const WeightFunction& w,
                                                    const std::vector<Symbol>& x,
                                                    std::optional<SymbolSet> targets = std::nullopt,
                                                    const Budget& budget = default_budget());

/// Unweighted C(f, x) for multi-valued f: least number of non-full coordinates.
int multivalued_certificate_complexity(const DenseFunction& f, const std::vector<Symbol>& x,
                                       const Budget& budget = default_budget());
/// max over x of multivalued_certificate_complexity.
int multivalued_certificate_profile(const DenseFunction& f, const Budget& budget = default_budget());

struct VerifiedCollection {
  CertificateCollection collection;
  int target = 1;
  bool certifying = false;
  bool unambiguous = false;
  bool covering = false;
  bool simple = false;
  Coverage coverage = Coverage::exhaustive;
  int max_size = 0;
  std::optional<Rational> max_weight;
  std::vector<std::string> failures;

  bool ok() const { return certifying && unambiguous && covering; }
};

/// Checks each member certifies f = target, the members are pairwise
/// inconsistent, and they cover f^-1(target); reports simplicity, size and weight.
VerifiedCollection verify_collection(const DenseFunction& f, const CertificateCollection& c,
                                     int target, const WeightFunction* w = nullptr);
/// Boolean version for tables up to the bit budget; coverage is checked by
/// counting (disjoint members covering exactly |f^-1(target)| points).
VerifiedCollection verify_collection(const BooleanFunction& f, const CertificateCollection& c,
                                     int target);
/// Lazy version: exhaustive when the domain fits budget.scan_points, otherwise
/// members are checked on samples and coverage on sampled target points.
VerifiedCollection verify_collection(const LazyFunction& f, const CertificateCollection& c,
                                     int target, const WeightFunction* w = nullptr,
                                     std::uint64_t samples = 4096, std::uint64_t seed = 0,
                                     const Budget& budget = default_budget());

/// Pairwise inconsistency only (structural check; no evaluation).
bool pairwise_inconsistent(const std::vector<BoxCertificate>& certs, std::string* why = nullptr);

}  // namespace sensilab::weighted
