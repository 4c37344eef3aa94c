#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace vieta {

using Int = mpz_class;

// Exact rational number.  Thin wrapper over GMP's mpq_class that guarantees
// the canonical-form invariant on every value that escapes this class:
// denominator > 0 and gcd(|num|, den) == 1.  (mpq_class itself does NOT
// canonicalize two-argument constructions, which is a classic footgun.)
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Int(num), Int(den)) {}
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }
  Int numerator() const { return v_.get_num(); }
  Int denominator() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }

  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational pow(unsigned long e) const {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
    Rational out;
    out.v_ = std::move(r); // num/den coprime => powers coprime, den still > 0
    return out;
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(1) / *this;
  }

  // "p" if integral, else "p/q".
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  // Accepts optional sign, digits, optionally "/digits" with nonzero
  // denominator.  Rejects anything else (notably decimal points).
  static Rational parse(std::string_view s);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// gcd of two rationals: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d).  Used for
// content computation; gcd(0, x) = |x|.
Rational rational_gcd(const Rational& a, const Rational& b);

} // namespace vieta
