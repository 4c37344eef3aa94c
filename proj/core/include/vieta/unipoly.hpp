#pragma once

#include <vector>

#include "vieta/multipoly.hpp"
#include "vieta/upolyq.hpp"

namespace vieta {

// Polynomial in one main variable whose coefficients are exact polynomials
// in t.  This is the shape elimination produces: R(main; t).
class UniPolyInT {
public:
  UniPolyInT() = default;
  UniPolyInT(Var main, std::vector<UPolyQ> coeffs_ascending)
      : main_(main), c_(std::move(coeffs_ascending)) {
    trim();
  }

  // Requires p to involve no variables besides `main` and t.
  static UniPolyInT from_multipoly(const MultiPoly& p, Var main);
  MultiPoly to_multipoly() const;

  Var main() const { return main_; }
  long degree() const { return long(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<UPolyQ>& coeffs() const { return c_; }
  UPolyQ coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : UPolyQ();
  }
  const UPolyQ& leading() const { return c_.back(); }

  UniPolyInT derivative_main() const;

  // Exact evaluation of every coefficient at rational t, then rounding to
  // double.  Throws std::range_error if a value overflows a double.
  // `scale` (if nonnull) receives max_i |c_i(t)| -- the natural magnitude
  // for relative residual tests.
  std::vector<double> coefficients_at(const Rational& t,
                                      double* scale = nullptr) const;

  std::string str() const;

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  Var main_ = Var::X;
  std::vector<UPolyQ> c_;
};

} // namespace vieta
