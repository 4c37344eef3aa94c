#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vieta/eliminant.hpp"
#include "vieta/tracker.hpp"

namespace vieta {

// Elementary symmetric function of the eliminant's roots as an exact
// polynomial in t:  e_k(t) = (-1)^k * c_{N-k}(t) / lead.
UPolyQ elementary_symmetric(const Eliminant& e, int k);

// Power sum p_I(t) = sum of root^I via Newton's identities, exact in t.
UPolyQ power_sum(const Eliminant& e, int I);

// Sum of x_i^2 + y_i^2 over all solutions, exact in t.  Degree <= 2 for
// systems with the conserved degree structure.
UPolyQ radial_square_sum(const Eliminants& el);

// One audited law.
struct ConservationReport {
  std::string law;
  std::optional<std::string> expected_exact; // exact value/polynomial, textual
  std::optional<double> expected_approx;
  double max_drift = 0.0;   // worst relative deviation over audited samples
  double max_imag = 0.0;    // worst residual imaginary part in ensemble sums
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, std::string> details;
};

// Ensemble center-of-sum motion: sum x_i(t) must equal the exact linear
// polynomial -c_{N-1}(t)/lead for each coordinate.
ConservationReport check_com_motion(const Eliminants& el,
                                    const std::vector<TrajectorySample>& traj,
                                    const Tolerances& tol);

// Total momentum (sum of velocities) against the exact time derivative of
// the ensemble sum; constant for structured systems.
ConservationReport check_momentum(const Eliminants& el,
                                  const std::vector<TrajectorySample>& traj,
                                  const Tolerances& tol);

// Total force (sum of accelerations) must vanish.
ConservationReport check_force(const std::vector<TrajectorySample>& traj,
                               const Tolerances& tol);

// Energy analogue: sum(v^2) + sum(r . a) equals half the second derivative
// of the radial square sum -- a constant for structured systems.
ConservationReport check_energy(const Eliminants& el,
                                const std::vector<TrajectorySample>& traj,
                                const Tolerances& tol);

// Power sum of order I of each coordinate against the exact polynomial.
ConservationReport check_higher_sums(const Eliminants& el,
                                     const std::vector<TrajectorySample>& traj,
                                     int I, const Tolerances& tol);

// Total angular momentum sum(x v_y - y v_x): numeric constancy check.  The
// expected value may be supplied (e.g. from the exact pipeline); otherwise
// constancy against the first audited sample is reported.
ConservationReport angular_momentum_numeric(
    const std::vector<TrajectorySample>& traj, const Tolerances& tol,
    const std::optional<Rational>& expected = std::nullopt);

// The full audit: com motion, momentum, force, energy, angular momentum,
// and higher power sums for I = 3 .. min(N, max_power).
std::vector<ConservationReport> audit(const Eliminants& el,
                                      const std::vector<TrajectorySample>& traj,
                                      const Tolerances& tol, int max_power = 6);

} // namespace vieta
