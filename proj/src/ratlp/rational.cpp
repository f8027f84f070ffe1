#include "sensilab/ratlp/rational.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw InputError("empty rational");
  const auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) throw InputError("malformed rational '" + s + "'");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw InputError("malformed rational '" + s + "'");
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
  }
  const auto num = s.substr(0, slash);
  const auto den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  const mpz_class d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  Rational r(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

Rational ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

}  // namespace sensilab
