#include "vieta/multipoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "vieta/errors.hpp"

namespace vieta {

void MultiPoly::insert_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant())
    throw std::logic_error("constant_value() on non-constant polynomial " + str());
  return terms_.begin()->second;
}

long MultiPoly::degree(Var v) const {
  long d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, long(m[v]));
  return d;
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  // leading (last) monomial has the maximal total degree in graded order
  return long(terms_.rbegin()->first.total_degree());
}

long MultiPoly::degree_xy() const {
  long d = -1;
  for (const auto& [m, c] : terms_)
    d = std::max(d, long(m[Var::X]) + long(m[Var::Y]));
  return d;
}

MultiPoly MultiPoly::leading_coefficient(Var v) const {
  long d = degree(v);
  if (d < 0) return MultiPoly();
  return coefficient_of(v, static_cast<std::uint32_t>(d));
}

MultiPoly MultiPoly::coefficient_of(Var v, std::uint32_t k) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    if (m[v] == k) {
      Monomial rest = m;
      rest[v] = 0;
      out.insert_term(rest, c);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) insert_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) insert_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  // iterate the smaller operand outside
  const MultiPoly& s = a.num_terms() <= b.num_terms() ? a : b;
  const MultiPoly& l = a.num_terms() <= b.num_terms() ? b : a;
  for (const auto& [ms, cs] : s.terms_)
    for (const auto& [ml, cl] : l.terms_) out.insert_term(ms + ml, cs * cl);
  return out;
}

MultiPoly& MultiPoly::scale(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc(1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(Var v) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Monomial d = m;
    d[v] -= 1;
    out.insert_term(d, c * Rational(long(m[v])));
  }
  return out;
}

MultiPoly MultiPoly::substitute(Var v, const Rational& val) const {
  // power table up to the degree in v
  long d = degree(v);
  std::vector<Rational> pw;
  pw.reserve(d > 0 ? d + 1 : 1);
  pw.emplace_back(1);
  for (long k = 1; k <= d; ++k) pw.push_back(pw.back() * val);
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[v] = 0;
    out.insert_term(rest, c * pw[m[v]]);
  }
  return out;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& val) const {
  long d = degree(v);
  std::vector<MultiPoly> pw;
  pw.reserve(d > 0 ? d + 1 : 1);
  pw.emplace_back(1);
  for (long k = 1; k <= d; ++k) pw.push_back(pw.back() * val);
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[v] = 0;
    MultiPoly piece;
    piece.insert_term(rest, c);
    out += piece * pw[m[v]];
  }
  return out;
}

bool MultiPoly::try_exact_divide(const MultiPoly& divisor, MultiPoly& quotient) const {
  if (divisor.is_zero()) return false;
  MultiPoly q;
  MultiPoly r = *this;
  const auto& dlead = *divisor.terms_.rbegin();
  while (!r.is_zero()) {
    const auto& rlead = *r.terms_.rbegin();
    if (!dlead.first.divides(rlead.first)) return false;
    Monomial qm = rlead.first - dlead.first;
    Rational qc = rlead.second / dlead.second;
    MultiPoly qt;
    qt.terms_.emplace(qm, qc);
    q += qt;
    r -= qt * divisor;
  }
  quotient = std::move(q);
  return true;
}

MultiPoly MultiPoly::exact_divide(const MultiPoly& divisor) const {
  MultiPoly q;
  if (!try_exact_divide(divisor, q))
    throw DivisionFailed("exact polynomial division failed");
  return q;
}

Rational MultiPoly::content() const {
  Rational g(0);
  for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
  return g;
}

double MultiPoly::magnitude_at(const std::array<std::complex<double>, 4>& pt) const {
  std::array<double, 4> a{std::abs(pt[0]), std::abs(pt[1]), std::abs(pt[2]),
                          std::abs(pt[3])};
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double term = std::abs(c.to_double());
    for (int v = 0; v < 4; ++v)
      for (std::uint32_t k = 0; k < m.e[v]; ++k) term *= a[v];
    acc += term;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending canonical order
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    const Rational& c = it->second;
    bool neg = c.sign() < 0;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    Rational mag = c.abs();
    bool has_vars = m.total_degree() > 0;
    bool unit = (mag == Rational(1));
    if (!has_vars || !unit) os << mag.str();
    if (has_vars) {
      bool need_star = !unit;
      // factor order within a term: t first (it plays the role of a
      // coefficient parameter), then x, y, M
      for (Var v : {Var::T, Var::X, Var::Y, Var::M}) {
        std::uint32_t e = m[v];
        if (e == 0) continue;
        if (need_star) os << '*';
        os << var_name(v);
        if (e > 1) os << '^' << e;
        need_star = true;
      }
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
  return os << p.str();
}

} // namespace vieta
