#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vieta/rational.hpp"
#include "vieta/variables.hpp"

namespace vieta {

// Exponent tuple (e_x, e_y, e_t, e_M), indexed by Var.
struct Monomial {
  std::array<std::uint32_t, 4> e{0, 0, 0, 0};

  std::uint32_t operator[](Var v) const { return e[static_cast<std::size_t>(v)]; }
  std::uint32_t& operator[](Var v) { return e[static_cast<std::size_t>(v)]; }

  std::uint64_t total_degree() const {
    return std::uint64_t(e[0]) + e[1] + e[2] + e[3];
  }

  bool divides(const Monomial& m) const {
    for (int i = 0; i < 4; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }

  friend Monomial operator+(Monomial a, const Monomial& b) {
    for (int i = 0; i < 4; ++i) a.e[i] += b.e[i];
    return a;
  }
  friend Monomial operator-(Monomial a, const Monomial& b) {
    for (int i = 0; i < 4; ++i) a.e[i] -= b.e[i]; // caller guarantees divisibility
    return a;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Graded lexicographic order with variable priority x > y > M > t,
// ascending (so the last map entry is the leading monomial).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // lex tie-break, highest-priority variable first
    static constexpr int prio[4] = {0, 1, 3, 2}; // x, y, M, t
    for (int p : prio) {
      if (a.e[p] != b.e[p]) return a.e[p] < b.e[p];
    }
    return false;
  }
};

// Sparse multivariate polynomial over the rationals in x, y, t, M.
// Invariant: no stored coefficient is zero.
class MultiPoly {
public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  MultiPoly() = default;
  explicit MultiPoly(const Rational& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
  }
  MultiPoly(int c) : MultiPoly(Rational(c)) {}

  static MultiPoly variable(Var v, std::uint32_t power = 1) {
    MultiPoly p;
    if (power == 0) return MultiPoly(1);
    Monomial m;
    m[v] = power;
    p.terms_[m] = Rational(1);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
  }
  // Value as a rational; requires is_constant().
  Rational constant_value() const;

  long degree(Var v) const;        // -1 for the zero polynomial
  long total_degree() const;       // -1 for the zero polynomial
  long degree_xy() const;          // joint total degree in x and y
  bool uses(Var v) const { return degree(v) > 0; }

  // Leading coefficient w.r.t. one variable: the coefficient of v^deg,
  // itself a polynomial in the remaining variables.
  MultiPoly leading_coefficient(Var v) const;
  // Coefficient of v^k as a polynomial in the remaining variables.
  MultiPoly coefficient_of(Var v, std::uint32_t k) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& scale(const Rational& c);
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }

  MultiPoly derivative(Var v) const;

  // Exact substitution of one variable by a rational value.
  MultiPoly substitute(Var v, const Rational& val) const;
  // Exact substitution of one variable by a polynomial.
  MultiPoly substitute(Var v, const MultiPoly& val) const;

  // Quotient of an exact division; throws DivisionFailed on nonzero
  // remainder.
  MultiPoly exact_divide(const MultiPoly& divisor) const;
  // Like exact_divide but reports failure by returning false.
  bool try_exact_divide(const MultiPoly& divisor, MultiPoly& quotient) const;

  // gcd of all coefficients (zero polynomial -> 0).
  Rational content() const;

  // Full numeric evaluation; every variable that appears must be bound.
  // C must support ring operations and multiplication by double.
  template <class C>
  C evaluate_point(const std::array<C, 4>& point) const {
    // per-variable power tables
    std::array<std::vector<C>, 4> pows;
    for (int v = 0; v < 4; ++v) {
      long d = degree(static_cast<Var>(v));
      pows[v].reserve(d > 0 ? d + 1 : 1);
      pows[v].push_back(C(1));
      for (long k = 1; k <= d; ++k) pows[v].push_back(pows[v].back() * point[v]);
    }
    C acc(0);
    for (const auto& [m, c] : terms_) {
      C term(c.to_double());
      for (int v = 0; v < 4; ++v)
        if (m.e[v] > 0) term = term * pows[v][m.e[v]];
      acc = acc + term;
    }
    return acc;
  }

  std::complex<double> evaluate_complex(const std::array<std::complex<double>, 4>& pt) const {
    return evaluate_point<std::complex<double>>(pt);
  }

  // Sum of |coefficient| * |point|^monomial: a natural magnitude scale for
  // relative tolerances at a given evaluation point.
  double magnitude_at(const std::array<std::complex<double>, 4>& pt) const;

  // Canonical text form; see parser for the grammar it satisfies.
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

private:
  void insert_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

} // namespace vieta
