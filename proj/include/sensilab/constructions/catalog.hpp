#pragma once

#include <string>
#include <vector>

#include "sensilab/core/boolean_function.hpp"

namespace sensilab::constructions {

/// Named Boolean functions: orN, andN, xorN, maj3, and2-or2, or2-and2, sort3,
/// tight-family-kK, desensitized-or2, desensitized-and2, const0-N, const1-N, dict1.
BooleanFunction named_function(const std::string& name);
std::vector<std::string> named_function_examples();

}  // namespace sensilab::constructions
