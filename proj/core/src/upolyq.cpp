#include "vieta/upolyq.hpp"

#include <sstream>
#include <stdexcept>

#include "vieta/errors.hpp"

namespace vieta {

UPolyQ UPolyQ::variable() {
  return UPolyQ(std::vector<Rational>{Rational(0), Rational(1)});
}

UPolyQ UPolyQ::from_multipoly(const MultiPoly& p, Var v) {
  std::vector<Rational> c;
  for (const auto& [m, coeff] : p.terms()) {
    if (m.total_degree() != m[v])
      throw std::invalid_argument("polynomial is not univariate in " +
                                  std::string(var_name(v)) + ": " + p.str());
    if (m[v] >= c.size()) c.resize(m[v] + 1, Rational(0));
    c[m[v]] = coeff;
  }
  return UPolyQ(std::move(c));
}

MultiPoly UPolyQ::to_multipoly(Var v) const {
  MultiPoly out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    MultiPoly term = MultiPoly::variable(v, static_cast<std::uint32_t>(k));
    term.scale(c_[k]);
    out += term;
  }
  return out;
}

UPolyQ UPolyQ::operator-() const {
  UPolyQ r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPolyQ operator+(const UPolyQ& a, const UPolyQ& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPolyQ(std::move(c));
}

UPolyQ operator-(const UPolyQ& a, const UPolyQ& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return UPolyQ(std::move(c));
}

UPolyQ operator*(const UPolyQ& a, const UPolyQ& b) {
  if (a.is_zero() || b.is_zero()) return UPolyQ();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPolyQ(std::move(c));
}

UPolyQ& UPolyQ::scale(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

UPolyQ UPolyQ::derivative() const {
  if (c_.size() <= 1) return UPolyQ();
  std::vector<Rational> c(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * Rational(long(k));
  return UPolyQ(std::move(c));
}

Rational UPolyQ::eval(const Rational& at) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

double UPolyQ::eval_double(double at) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + it->to_double();
  return acc;
}

std::pair<UPolyQ, UPolyQ> UPolyQ::divrem(const UPolyQ& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  UPolyQ r = *this;
  long dd = d.degree();
  if (degree() < dd) return {UPolyQ(), r};
  std::vector<Rational> q(degree() - dd + 1, Rational(0));
  while (!r.is_zero() && r.degree() >= dd) {
    long k = r.degree() - dd;
    Rational f = r.leading() / d.leading();
    q[k] = f;
    // r -= f * u^k * d
    for (long j = 0; j <= dd; ++j) r.c_[k + j] -= f * d.c_[j];
    r.trim();
  }
  return {UPolyQ(std::move(q)), r};
}

UPolyQ UPolyQ::exact_divide(const UPolyQ& d) const {
  auto [q, r] = divrem(d);
  if (!r.is_zero())
    throw DivisionFailed("univariate exact division left remainder " + r.str());
  return q;
}

Rational UPolyQ::content() const {
  Rational g(0);
  for (const auto& x : c_) g = rational_gcd(g, x);
  return g;
}

UPolyQ UPolyQ::primitive(Rational* scale) const {
  if (is_zero()) {
    if (scale) *scale = Rational(0);
    return UPolyQ();
  }
  Rational g = content();
  if (leading().sign() < 0) g = -g;
  if (scale) *scale = g;
  UPolyQ r = *this;
  r.scale(g.inverse());
  return r;
}

UPolyQ UPolyQ::monic() const {
  if (is_zero()) return UPolyQ();
  UPolyQ r = *this;
  r.scale(leading().inverse());
  return r;
}

UPolyQ UPolyQ::gcd(UPolyQ a, UPolyQ b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  a = a.primitive();
  b = b.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  // primitive remainder sequence; scaling every remainder back to primitive
  // keeps the coefficients small without changing the gcd
  while (!b.is_zero()) {
    UPolyQ r = a.divrem(b).second;
    a = std::move(b);
    b = r.is_zero() ? UPolyQ() : r.primitive();
  }
  return a.monic();
}

UPolyQ UPolyQ::squarefree_part() const {
  if (degree() <= 0) return primitive();
  UPolyQ g = gcd(*this, derivative());
  return exact_divide(g).primitive();
}

std::string UPolyQ::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    const Rational& c = c_[k];
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    Rational mag = c.abs();
    if (k == 0 || mag != Rational(1)) os << mag.str();
    if (k > 0) {
      if (mag != Rational(1)) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

} // namespace vieta
