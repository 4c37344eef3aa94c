#include "vieta/eliminant.hpp"

#include <stdexcept>

#include "vieta/errors.hpp"

namespace vieta {
namespace {

// Coefficients a_0..a_d of the leading homogeneous (x,y)-form, read as a
// univariate coefficient list along `axis`: a_k multiplies axis^k * other^(d-k).
std::vector<Rational> leading_form_coeffs(const MultiPoly& p, int d, Var axis) {
  std::vector<Rational> c(d + 1, Rational(0));
  for (const auto& [m, coeff] : p.terms()) {
    if (long(m[Var::X]) + long(m[Var::Y]) != d) continue;
    if (m[Var::T] != 0)
      throw DegenerateSystem(
          "leading (x,y)-form has t-dependent coefficients: " + p.str());
    c[m[axis]] += coeff;
  }
  return c;
}

// Determinant of the Sylvester-style matrix built from two full coefficient
// lists (length dp+1 and dq+1, descending).  Leading entries may be zero:
// this is the resultant of the FORMS of formal degrees dp, dq.
Rational form_resultant(const std::vector<Rational>& pc_desc,
                        const std::vector<Rational>& qc_desc) {
  std::size_t dp = pc_desc.size() - 1, dq = qc_desc.size() - 1;
  std::size_t dim = dp + dq;
  std::vector<MultiPoly> m(dim * dim, MultiPoly());
  for (std::size_t row = 0; row < dq; ++row)
    for (std::size_t k = 0; k <= dp; ++k)
      m[row * dim + row + k] = MultiPoly(pc_desc[k]);
  for (std::size_t row = 0; row < dp; ++row)
    for (std::size_t k = 0; k <= dq; ++k)
      m[(dq + row) * dim + row + k] = MultiPoly(qc_desc[k]);
  return bareiss_determinant(std::move(m), dim).constant_value();
}

std::vector<Rational> descending(std::vector<Rational> asc) {
  std::reverse(asc.begin(), asc.end());
  return asc;
}

} // namespace

Rational leading_form_resultant(const PolySystem& sys) {
  auto f1x = leading_form_coeffs(sys.f1, sys.n, Var::X);
  auto f2x = leading_form_coeffs(sys.f2, sys.m, Var::X);
  auto f1y = leading_form_coeffs(sys.f1, sys.n, Var::Y);
  auto f2y = leading_form_coeffs(sys.f2, sys.m, Var::Y);
  Rational rx = form_resultant(descending(f1x), descending(f2x));
  Rational ry = form_resultant(descending(f1y), descending(f2y));
  if (rx.abs() != ry.abs())
    throw std::logic_error("leading-form resultant mismatch between "
                           "orientations: " + rx.str() + " vs " + ry.str());
  if (rx.is_zero())
    throw DegenerateSystem(
        "the leading forms of F1 and F2 share a root: the system has fewer "
        "than n*m solutions and particle number is not conserved");
  return rx;
}

Eliminants eliminants(const PolySystem& sys, const ResultantOptions& opt) {
  Rational f = leading_form_resultant(sys);
  const int N = sys.root_count();

  auto build = [&](Var keep, Var drop) -> Eliminant {
    MultiPoly raw = resultant(sys.f1, sys.f2, drop, opt);
    UniPolyInT r = UniPolyInT::from_multipoly(raw, keep);
    if (r.degree() != N)
      throw DegenerateSystem(
          "eliminant in " + std::string(var_name(keep)) + " has degree " +
          std::to_string(r.degree()) + ", expected " + std::to_string(N));
    const UPolyQ& lc = r.leading();
    if (lc.degree() != 0)
      throw DegenerateSystem(
          "eliminant in " + std::string(var_name(keep)) +
          " has a t-dependent leading coefficient: " + lc.str());
    Rational lead = lc.coeff(0);
    if (lead.abs() != f.abs())
      throw std::logic_error("eliminant leading coefficient " + lead.str() +
                             " does not match the leading-form resultant " +
                             f.str());
    return Eliminant{std::move(r), drop, lead};
  };

  Eliminants out{build(Var::X, Var::Y), build(Var::Y, Var::X), f};
  return out;
}

UPolyQ discriminant(const Eliminant& e, const ResultantOptions& opt) {
  MultiPoly r = e.poly.to_multipoly();
  Var main = e.poly.main();
  MultiPoly dr = r.derivative(main);
  MultiPoly raw = resultant(r, dr, main, opt);
  if (raw.degree(main) > 0)
    throw std::logic_error("discriminant still contains the main variable");
  UPolyQ d = UPolyQ::from_multipoly(raw, Var::T);
  d.scale(e.lead.inverse());
  return d;
}

UPolyQ common_factor(const UPolyQ& disc_x, const UPolyQ& disc_y) {
  return UPolyQ::gcd(disc_x, disc_y);
}

} // namespace vieta
