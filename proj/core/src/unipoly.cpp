#include "vieta/unipoly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vieta {

UniPolyInT UniPolyInT::from_multipoly(const MultiPoly& p, Var main) {
  std::vector<UPolyQ> coeffs;
  std::vector<std::vector<Rational>> tmp;
  for (const auto& [m, c] : p.terms()) {
    if (m.total_degree() != m[main] + m[Var::T])
      throw std::invalid_argument(
          "polynomial has variables besides " + std::string(var_name(main)) +
          " and t: " + p.str());
    std::size_t k = m[main];
    std::size_t j = m[Var::T];
    if (k >= tmp.size()) tmp.resize(k + 1);
    if (j >= tmp[k].size()) tmp[k].resize(j + 1, Rational(0));
    tmp[k][j] = c;
  }
  coeffs.reserve(tmp.size());
  for (auto& v : tmp) coeffs.emplace_back(std::move(v));
  return UniPolyInT(main, std::move(coeffs));
}

MultiPoly UniPolyInT::to_multipoly() const {
  MultiPoly out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    MultiPoly xe = MultiPoly::variable(main_, static_cast<std::uint32_t>(k));
    out += xe * c_[k].to_multipoly(Var::T);
  }
  return out;
}

UniPolyInT UniPolyInT::derivative_main() const {
  if (c_.size() <= 1) return UniPolyInT(main_, {});
  std::vector<UPolyQ> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    d[k - 1] = c_[k];
    d[k - 1].scale(Rational(long(k)));
  }
  return UniPolyInT(main_, std::move(d));
}

std::vector<double> UniPolyInT::coefficients_at(const Rational& t,
                                                double* scale) const {
  std::vector<double> out;
  out.reserve(c_.size());
  double mx = 0;
  for (const auto& ct : c_) {
    double v = ct.eval(t).to_double();
    if (!std::isfinite(v))
      throw std::range_error("coefficient overflows double at t = " + t.str());
    out.push_back(v);
    mx = std::max(mx, std::abs(v));
  }
  if (scale) *scale = mx;
  return out;
}

std::string UniPolyInT::str() const { return to_multipoly().str(); }

} // namespace vieta
