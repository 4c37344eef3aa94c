#include "vieta/rational.hpp"

#include <ostream>

#include "vieta/errors.hpp"

namespace vieta {

Rational Rational::parse(std::string_view s) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("invalid rational '" + std::string(s) + "': " + why, i);
  };
  if (s.empty()) throw fail("empty");
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  auto digits = [&]() -> Int {
    if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i])))
      throw fail("expected digits");
    Int acc = 0;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
      acc = acc * 10 + (s[i] - '0');
      ++i;
    }
    return acc;
  };
  Int num = digits();
  Int den = 1;
  if (i < s.size() && s[i] == '/') {
    ++i;
    den = digits();
    if (den == 0) throw fail("zero denominator");
  }
  if (i != s.size()) {
    if (s[i] == '.') throw fail("decimal literals are not supported, use p/q");
    throw fail("trailing characters");
  }
  Rational r{num, den};
  return neg ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  Int gn, lcd;
  mpz_gcd(gn.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
  mpz_lcm(lcd.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
  return Rational(gn, lcd);
}

} // namespace vieta
