#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sensilab {

using Rational = mpq_class;

/// "3", "7/2", "-1/8". Throws InputError on malformed text or zero denominators.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);
Rational ceil(const Rational& r);

}  // namespace sensilab
