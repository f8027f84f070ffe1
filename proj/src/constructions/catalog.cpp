#include "sensilab/constructions/catalog.hpp"

#include <bit>
#include <regex>

#include "sensilab/constructions/transforms.hpp"
#include "sensilab/core/errors.hpp"
#include "sensilab/measures/decision_tree.hpp"

namespace sensilab::constructions {

namespace {

BooleanFunction and_function(int n) {
  return BooleanFunction::from_predicate(
      n, [n](std::uint64_t x) { return x == (std::uint64_t{1} << n) - 1; }, "and" + std::to_string(n));
}

BooleanFunction desensitized_named(const BooleanFunction& f, const std::string& name) {
  const auto leaves = measures::decision_tree_depth(f).leaf_certificates(f.arity(), true);
  auto d = desensitize(f, leaves).function;
  d.set_name(name);
  return d;
}

int arity_of(const std::string& digits, const std::string& name) {
  const int n = std::stoi(digits);
  if (n < 0 || n > BooleanFunction::kMaxArity) throw InputError("arity out of range in '" + name + "'");
  return n;
}

}  // namespace

BooleanFunction named_function(const std::string& name) {
  std::smatch m;
  static const std::regex family("(or|and|xor)([0-9]+)");
  static const std::regex constant("const([01])-([0-9]+)");
  static const std::regex tight("tight-family-k([0-9]+)");
  if (std::regex_match(name, m, family)) {
    const int n = arity_of(m[2], name);
    if (m[1] == "or") return or_function(n);
    if (m[1] == "and") return and_function(n);
    return BooleanFunction::from_predicate(n, [](std::uint64_t x) { return std::popcount(x) & 1; }, name);
  }
  if (std::regex_match(name, m, constant)) {
    const int n = arity_of(m[2], name);
    const bool one = m[1] == "1";
    return BooleanFunction::from_predicate(n, [one](std::uint64_t) { return one; }, name);
  }
  if (std::regex_match(name, m, tight)) {
    auto f = tight_family(std::stoi(m[1])).function;
    f.set_name(name);
    return f;
  }
  if (name == "maj3")
    return BooleanFunction::from_predicate(3, [](std::uint64_t x) { return std::popcount(x) >= 2; }, name);
  if (name == "sort3")
    return BooleanFunction::from_predicate(
        3,
        [](std::uint64_t x) {
          const int a = x & 1, b = (x >> 1) & 1, c = (x >> 2) & 1;
          return (a <= b && b <= c) || (a >= b && b >= c);
        },
        name);
  if (name == "dict1") return BooleanFunction::from_predicate(1, [](std::uint64_t x) { return x == 1; }, name);
  if (name == "and2-or2") {
    auto f = outer_compose(and_function(2), or_function(2));
    f.set_name(name);
    return f;
  }
  if (name == "or2-and2") {
    auto f = outer_compose(or_function(2), and_function(2));
    f.set_name(name);
    return f;
  }
  if (name == "desensitized-or2") return desensitized_named(or_function(2), name);
  if (name == "desensitized-and2") return desensitized_named(and_function(2), name);
  throw InputError("unknown function name '" + name + "'");
}

std::vector<std::string> named_function_examples() {
  return {"or2",  "or3",      "or4",      "and2",       "and3",          "xor2",           "xor3",
          "maj3", "sort3",    "dict1",    "and2-or2",   "or2-and2",      "tight-family-k1", "tight-family-k2",
          "desensitized-or2", "desensitized-and2", "const0-2", "const1-2"};
}

}  // namespace sensilab::constructions
