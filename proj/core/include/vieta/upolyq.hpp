#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vieta/multipoly.hpp"
#include "vieta/rational.hpp"

namespace vieta {

// Dense univariate polynomial over the rationals.  The indeterminate is
// anonymous; callers track which symbol it stands for.  Coefficients are
// stored ascending with no trailing zeros.
class UPolyQ {
public:
  UPolyQ() = default;
  explicit UPolyQ(std::vector<Rational> ascending) : c_(std::move(ascending)) {
    trim();
  }
  explicit UPolyQ(const Rational& c) : c_{c} { trim(); }

  static UPolyQ variable(); // the monomial u

  // Projection from a MultiPoly that uses no variable other than `v`.
  static UPolyQ from_multipoly(const MultiPoly& p, Var v);
  MultiPoly to_multipoly(Var v) const;

  long degree() const { return long(c_.size()) - 1; } // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t k) const { return c_[k]; }
  Rational coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Rational(0);
  }
  const Rational& leading() const { return c_.back(); }

  UPolyQ operator-() const;
  friend UPolyQ operator+(const UPolyQ& a, const UPolyQ& b);
  friend UPolyQ operator-(const UPolyQ& a, const UPolyQ& b);
  friend UPolyQ operator*(const UPolyQ& a, const UPolyQ& b);
  UPolyQ& operator+=(const UPolyQ& o) { return *this = *this + o; }
  UPolyQ& operator-=(const UPolyQ& o) { return *this = *this - o; }
  UPolyQ& operator*=(const UPolyQ& o) { return *this = *this * o; }
  UPolyQ& scale(const Rational& s);
  friend bool operator==(const UPolyQ& a, const UPolyQ& b) { return a.c_ == b.c_; }

  UPolyQ derivative() const;
  Rational eval(const Rational& at) const;
  double eval_double(double at) const;

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPolyQ, UPolyQ> divrem(const UPolyQ& d) const;
  // Quotient of an exact division; throws DivisionFailed otherwise.
  UPolyQ exact_divide(const UPolyQ& d) const;

  Rational content() const;
  // Scales to integer coefficients with gcd 1, preserving sign of the
  // leading coefficient.  Returns the primitive polynomial; if `scale` is
  // given, stores the factor s with *this == s * primitive.
  UPolyQ primitive(Rational* scale = nullptr) const;
  UPolyQ monic() const; // leading coefficient 1; zero stays zero

  // gcd via the primitive pseudo-remainder sequence, returned monic.
  static UPolyQ gcd(UPolyQ a, UPolyQ b);
  // p / gcd(p, p'): same distinct roots, all simple.  Returned primitive.
  UPolyQ squarefree_part() const;

  std::string str(const char* var = "t") const;

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

} // namespace vieta
