#pragma once

#include <optional>
#include <vector>

#include "vieta/assemble.hpp"
#include "vieta/eliminant.hpp"
#include "vieta/sturm.hpp"

namespace vieta {

// First and second t-derivatives of one particle's coordinates, obtained by
// implicit differentiation of the eliminants along their root curves.
struct ParticleDerivs {
  Complex vx, vy, ax, ay;
};

struct TrajectorySample {
  Rational t;
  bool near_event = false;
  std::vector<ParticleState> particles;  // indexed by persistent id
  std::vector<ParticleDerivs> derivs;    // empty when near_event
};

enum class EventKind { Creation, Annihilation, Degenerate };

// A real root of D(t) = gcd(disc_x, disc_y): a time where solutions collide.
struct Event {
  Rational t_lo, t_hi; // isolating interval; t_lo == t_hi when the root is
  bool exact = false;  // an exact rational
  EventKind kind = EventKind::Degenerate;
  int count_change_x = 0; // real-root count of the x-eliminant, right minus left
  int count_change_y = 0;
  double x = 0, y = 0;       // collision location (real parts at midpoint)
  std::vector<int> involved; // particle ids when tracking context exists

  Rational midpoint() const { return exact ? t_lo : (t_lo + t_hi) / Rational(2); }
};

// Precomputed derivative polynomials of one eliminant, for repeated
// velocity/acceleration evaluation.
class DerivKit {
public:
  explicit DerivKit(const Eliminant& e);

  // dmain/dt = -R_t / R_main at a root.  Throws NearEvent when the
  // denominator is below eps_deriv relative to its magnitude scale.
  Complex velocity(Complex coord, const Rational& t, const Tolerances& tol) const;
  // d2main/dt2 = -(R_mm v^2 + 2 R_mt v + R_tt) / R_main.
  Complex acceleration(Complex coord, Complex v, const Rational& t,
                       const Tolerances& tol) const;

private:
  Var main_;
  MultiPoly r_, rm_, rt_, rmm_, rmt_, rtt_;
};

// Exact event detection: isolates the real roots of D(t) over the closed
// range, refines each interval to width <= delta_event, classifies the kind
// from exact Sturm real-root counts just left and right, and estimates the
// collision location.  `involved` is left empty here.
std::vector<Event> detect_events(const Eliminants& el, const Rational& t_lo,
                                 const Rational& t_hi, const Tolerances& tol);

struct TrackResult {
  std::vector<TrajectorySample> samples;
  std::vector<Event> events; // with involved ids filled where determinable
};

// Samples the solution set at `steps` uniform rational times (both
// endpoints included, spacing (t_end - t_start)/(steps - 1)), maintains
// particle identities by prediction matching (with bisection refinement on
// ambiguity), and computes derivatives away from events.  Samples where
// roots cannot be solved, assembled, or differentiated reliably are flagged
// near_event and carry no derivatives.
TrackResult track(const PolySystem& sys, const Rational& t_start,
                  const Rational& t_end, long steps, const Tolerances& tol);

} // namespace vieta
