#include "vieta/conservation.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace vieta {

UPolyQ elementary_symmetric(const Eliminant& e, int k) {
  const long n = e.poly.degree();
  if (k < 0 || k > n)
    throw std::invalid_argument("elementary_symmetric: order out of range");
  UPolyQ c = e.poly.coeff(std::size_t(n - k));
  c.scale(e.lead.inverse());
  if (k % 2 != 0) c.scale(Rational(-1));
  return c;
}

UPolyQ power_sum(const Eliminant& e, int I) {
  if (I < 0) throw std::invalid_argument("power_sum: negative order");
  const long n = e.poly.degree();
  if (I == 0) return UPolyQ(Rational(n));
  // Newton's identities:
  //   p_I = e_1 p_{I-1} - e_2 p_{I-2} + ... + (-1)^I (I) e_I   (e_k = 0, k > n)
  std::vector<UPolyQ> es(std::size_t(std::min<long>(I, n)) + 1);
  for (long k = 1; k < long(es.size()); ++k)
    es[k] = elementary_symmetric(e, int(k));
  std::vector<UPolyQ> p(I + 1);
  for (int m = 1; m <= I; ++m) {
    UPolyQ acc;
    int sign = 1;
    for (int k = 1; k < m; ++k) {
      if (k <= n) {
        UPolyQ term = es[k] * p[m - k];
        if (sign < 0) term.scale(Rational(-1));
        acc += term;
      }
      sign = -sign;
    }
    if (m <= n) {
      UPolyQ last = es[m];
      last.scale(Rational(sign * m));
      acc += last;
    }
    p[m] = std::move(acc);
  }
  return p[I];
}

UPolyQ radial_square_sum(const Eliminants& el) {
  return power_sum(el.in_x, 2) + power_sum(el.in_y, 2);
}

namespace {

struct EnsembleSums {
  std::vector<Rational> t;
  std::vector<Complex> sx, sy;       // sum of positions
  std::vector<Complex> svx, svy;     // sum of velocities
  std::vector<Complex> sax, say;     // sum of accelerations
  std::vector<Complex> energy;       // sum v^2 + r.a
  std::vector<Complex> angular;      // sum x v_y - y v_x
  std::vector<Complex> px, py;       // sum of coordinate^I (per call)
};

// Samples that take part in the audit: not flagged and carrying derivatives.
bool audited(const TrajectorySample& s) {
  return !s.near_event && !s.particles.empty() && !s.derivs.empty();
}

EnsembleSums ensemble_sums(const std::vector<TrajectorySample>& traj, int I = 0) {
  EnsembleSums e;
  for (const auto& s : traj) {
    if (!audited(s)) continue;
    Complex sx = 0, sy = 0, svx = 0, svy = 0, sax = 0, say = 0, en = 0, am = 0;
    Complex pxs = 0, pys = 0;
    for (std::size_t k = 0; k < s.particles.size(); ++k) {
      const auto& p = s.particles[k];
      const auto& d = s.derivs[k];
      sx += p.x;
      sy += p.y;
      svx += d.vx;
      svy += d.vy;
      sax += d.ax;
      say += d.ay;
      en += d.vx * d.vx + d.vy * d.vy + p.x * d.ax + p.y * d.ay;
      am += p.x * d.vy - p.y * d.vx;
      if (I > 0) {
        Complex xi = 1, yi = 1;
        for (int q = 0; q < I; ++q) {
          xi *= p.x;
          yi *= p.y;
        }
        pxs += xi;
        pys += yi;
      }
    }
    e.t.push_back(s.t);
    e.sx.push_back(sx);
    e.sy.push_back(sy);
    e.svx.push_back(svx);
    e.svy.push_back(svy);
    e.sax.push_back(sax);
    e.say.push_back(say);
    e.energy.push_back(en);
    e.angular.push_back(am);
    e.px.push_back(pxs);
    e.py.push_back(pys);
  }
  return e;
}

// max over samples of |observed - expected|, divided by (1 + |expected|)
// when `relative` -- momentum and force drifts are judged absolutely.
void drift_against(const std::vector<Complex>& obs,
                   const std::vector<double>& expected, bool relative,
                   double& drift, double& imag) {
  for (std::size_t i = 0; i < obs.size(); ++i) {
    double ref = relative ? 1.0 + std::abs(expected[i]) : 1.0;
    drift = std::max(drift, std::abs(obs[i].real() - expected[i]) / ref);
    imag = std::max(imag, std::abs(obs[i].imag()) / ref);
  }
}

std::vector<double> eval_on(const UPolyQ& p, const std::vector<Rational>& ts) {
  std::vector<double> v;
  v.reserve(ts.size());
  for (const auto& t : ts) v.push_back(p.eval(t).to_double());
  return v;
}

std::string vec2_str(const Rational& a, const Rational& b) {
  return "(" + a.str() + ", " + b.str() + ")";
}

} // namespace

ConservationReport check_com_motion(const Eliminants& el,
                                    const std::vector<TrajectorySample>& traj,
                                    const Tolerances& tol) {
  ConservationReport rep;
  rep.law = "com_motion";
  rep.tolerance = tol.tol_conservation;
  UPolyQ ax = power_sum(el.in_x, 1);
  UPolyQ ay = power_sum(el.in_y, 1);
  rep.details["sum_x_exact"] = ax.str();
  rep.details["sum_y_exact"] = ay.str();
  bool linear = ax.degree() <= 1 && ay.degree() <= 1;
  if (linear) {
    rep.expected_exact = vec2_str(ax.coeff(1), ay.coeff(1));
    rep.details["velocity"] = *rep.expected_exact;
  }
  auto e = ensemble_sums(traj);
  drift_against(e.sx, eval_on(ax, e.t), true, rep.max_drift, rep.max_imag);
  drift_against(e.sy, eval_on(ay, e.t), true, rep.max_drift, rep.max_imag);
  rep.pass = linear && rep.max_drift <= rep.tolerance &&
             rep.max_imag <= std::max(tol.eps_imag, rep.tolerance);
  return rep;
}

ConservationReport check_momentum(const Eliminants& el,
                                  const std::vector<TrajectorySample>& traj,
                                  const Tolerances& tol) {
  ConservationReport rep;
  rep.law = "momentum";
  rep.tolerance = tol.tol_momentum;
  UPolyQ dx = power_sum(el.in_x, 1).derivative();
  UPolyQ dy = power_sum(el.in_y, 1).derivative();
  bool constant = dx.degree() <= 0 && dy.degree() <= 0;
  if (constant) {
    rep.expected_exact = vec2_str(dx.coeff(0), dy.coeff(0));
    rep.expected_approx = std::hypot(dx.coeff(0).to_double(),
                                     dy.coeff(0).to_double());
  }
  auto e = ensemble_sums(traj);
  drift_against(e.svx, eval_on(dx, e.t), false, rep.max_drift, rep.max_imag);
  drift_against(e.svy, eval_on(dy, e.t), false, rep.max_drift, rep.max_imag);
  rep.pass = constant && rep.max_drift <= rep.tolerance &&
             rep.max_imag <= std::max(tol.eps_imag, rep.tolerance);
  return rep;
}

ConservationReport check_force(const std::vector<TrajectorySample>& traj,
                               const Tolerances& tol) {
  ConservationReport rep;
  rep.law = "force_sum";
  rep.tolerance = tol.tol_conservation;
  rep.expected_exact = "(0, 0)";
  rep.expected_approx = 0.0;
  auto e = ensemble_sums(traj);
  std::vector<double> zero(e.t.size(), 0.0);
  drift_against(e.sax, zero, false, rep.max_drift, rep.max_imag);
  drift_against(e.say, zero, false, rep.max_drift, rep.max_imag);
  rep.pass = rep.max_drift <= rep.tolerance &&
             rep.max_imag <= std::max(tol.eps_imag, rep.tolerance);
  return rep;
}

ConservationReport check_energy(const Eliminants& el,
                                const std::vector<TrajectorySample>& traj,
                                const Tolerances& tol) {
  ConservationReport rep;
  rep.law = "energy";
  rep.tolerance = tol.tol_conservation;
  UPolyQ s2 = radial_square_sum(el);
  rep.details["radial_square_sum"] = s2.str();
  bool quadratic = s2.degree() <= 2;
  Rational expected = s2.coeff(2); // (1/2) d^2/dt^2 of c2 t^2 + ... = c2
  if (quadratic) {
    rep.expected_exact = expected.str();
    rep.expected_approx = expected.to_double();
  }
  auto e = ensemble_sums(traj);
  std::vector<double> ev(e.t.size(), expected.to_double());
  drift_against(e.energy, ev, true, rep.max_drift, rep.max_imag);
  rep.pass = quadratic && rep.max_drift <= rep.tolerance &&
             rep.max_imag <= std::max(tol.eps_imag, rep.tolerance);
  return rep;
}

ConservationReport check_higher_sums(const Eliminants& el,
                                     const std::vector<TrajectorySample>& traj,
                                     int I, const Tolerances& tol) {
  ConservationReport rep;
  rep.law = "power_sum_" + std::to_string(I);
  rep.tolerance = tol.tol_conservation;
  UPolyQ px = power_sum(el.in_x, I);
  UPolyQ py = power_sum(el.in_y, I);
  rep.details["sum_x^" + std::to_string(I)] = px.str();
  rep.details["sum_y^" + std::to_string(I)] = py.str();
  rep.expected_exact = "x: " + px.str() + "; y: " + py.str();
  // The I-th t-derivative of a power sum of order I is the constant
  // I! * (t^I coefficient); record it as the law's invariant number.
  Rational fact(1);
  for (int k = 2; k <= I; ++k) fact *= Rational(k);
  rep.details["derivative_" + std::to_string(I) + "_x"] =
      (fact * px.coeff(std::size_t(I))).str();
  rep.details["derivative_" + std::to_string(I) + "_y"] =
      (fact * py.coeff(std::size_t(I))).str();
  auto e = ensemble_sums(traj, I);
  drift_against(e.px, eval_on(px, e.t), true, rep.max_drift, rep.max_imag);
  drift_against(e.py, eval_on(py, e.t), true, rep.max_drift, rep.max_imag);
  rep.pass = rep.max_drift <= rep.tolerance &&
             rep.max_imag <= std::max(tol.eps_imag, rep.tolerance);
  return rep;
}

ConservationReport angular_momentum_numeric(
    const std::vector<TrajectorySample>& traj, const Tolerances& tol,
    const std::optional<Rational>& expected) {
  ConservationReport rep;
  rep.law = "angular_momentum";
  rep.tolerance = tol.tol_conservation;
  auto e = ensemble_sums(traj);
  if (e.t.empty()) {
    rep.pass = false;
    rep.details["note"] = "no audited samples";
    return rep;
  }
  double ref_value =
      expected ? expected->to_double() : e.angular.front().real();
  if (expected) {
    rep.expected_exact = expected->str();
    rep.expected_approx = ref_value;
  } else {
    rep.details["reference"] = "first audited sample";
    rep.expected_approx = ref_value;
  }
  std::vector<double> ev(e.t.size(), ref_value);
  drift_against(e.angular, ev, true, rep.max_drift, rep.max_imag);
  std::ostringstream os;
  os << e.angular.front().real();
  rep.details["observed_first"] = os.str();
  rep.pass = rep.max_drift <= rep.tolerance &&
             rep.max_imag <= std::max(tol.eps_imag, rep.tolerance);
  return rep;
}

std::vector<ConservationReport> audit(const Eliminants& el,
                                      const std::vector<TrajectorySample>& traj,
                                      const Tolerances& tol, int max_power) {
  std::vector<ConservationReport> out;
  out.push_back(check_com_motion(el, traj, tol));
  out.push_back(check_momentum(el, traj, tol));
  out.push_back(check_force(traj, tol));
  out.push_back(check_energy(el, traj, tol));
  out.push_back(angular_momentum_numeric(traj, tol));
  const int N = int(el.in_x.poly.degree());
  for (int I = 3; I <= std::min(N, max_power); ++I)
    out.push_back(check_higher_sums(el, traj, I, tol));
  return out;
}

} // namespace vieta
