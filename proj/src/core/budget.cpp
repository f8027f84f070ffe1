#include "sensilab/core/budget.hpp"

#include <cstdlib>
#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {
namespace {

template <typename T>
void read_env(const char* key, T& out) {
  const char* text = std::getenv(key);
  if (text == nullptr || *text == '\0') return;
  char* end = nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    const double v = std::strtod(text, &end);
    if (*end != '\0' || v < 0) throw InputError(std::string("bad value for ") + key + ": " + text);
    out = static_cast<T>(v);
  } else {
    const unsigned long long v = std::strtoull(text, &end, 10);
    if (*end != '\0' || v == 0) throw InputError(std::string("bad value for ") + key + ": " + text);
    out = static_cast<T>(v);
  }
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  read_env("SENSILAB_DENSE_LIMIT", b.dense_entries);
  read_env("SENSILAB_BIT_LIMIT", b.boolean_bits);
  read_env("SENSILAB_SCAN_LIMIT", b.scan_points);
  read_env("SENSILAB_TIME_LIMIT", b.time_limit_seconds);
  return b;
}

const Budget& default_budget() {
  static const Budget budget = Budget::from_env();
  return budget;
}

SearchClock::SearchClock(const Budget& budget) {
  if (budget.time_limit_seconds > 0) {
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(budget.time_limit_seconds));
  }
}

void SearchClock::check(const char* what) {
  if (!deadline_ || (++counter_ & 0x3ff) != 0) return;
  if (std::chrono::steady_clock::now() > *deadline_)
    throw SizeError(std::string(what) + ": time limit exceeded");
}

}  // namespace sensilab
