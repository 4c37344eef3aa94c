#pragma once

#include <optional>
#include <string>

#include "vieta/multipoly.hpp"

namespace vieta {

// Two polynomial constraints F1(x,y,t) = F2(x,y,t) = 0 whose common
// solutions are tracked as particles.  n and m are the joint total degrees
// in (x, y); for generic systems there are N = n*m solutions.
struct PolySystem {
  MultiPoly f1;
  MultiPoly f2;
  int n = 0;
  int m = 0;
  // True when every coefficient of the degree-(n-i) part in (x,y) has
  // degree <= i in t (equivalently: total degree in (x,y,t) is at most n).
  // Systems violating this still run, but the solution count may vary with
  // t and the conservation analysis loses its footing.
  bool structure_ok = false;

  int root_count() const { return n * m; }
};

// Validates and packages a parsed pair of constraints.  Throws ConfigError
// if M appears, or if either polynomial ignores both x and y.
PolySystem load_system(const MultiPoly& f1, const MultiPoly& f2);
PolySystem load_system(const std::string& f1_text, const std::string& f2_text);

// Numeric knobs.  All the *relative* tolerances are applied against a
// natural magnitude scale of whatever quantity they guard.
struct Tolerances {
  double tol_root = 1e-12;     // root residual target
  double eps_real = 1e-9;      // imaginary part snapped to zero below this
  double eps_conj = 1e-8;      // conjugate pairing distance
  double eps_cluster = 1e-6;   // multiplicity cluster radius
  double tol_pair = 1e-7;      // particle assembly residual
  // Implicit-derivative denominator cutoff.  1e-3 keeps both velocities and
  // accelerations accurate to ~1e-9 relative; the corresponding blackout
  // band around an event is only O(1e-6) wide in t because the denominator
  // vanishes like sqrt(t - t_event).
  double eps_deriv = 1e-3;
  double delta_event = 1e-6;   // event interval refinement width
  double tol_conservation = 1e-6; // drift verdict threshold (see per-law notes)
  double tol_momentum = 1e-8;  // momentum drift, absolute
  double eps_imag = 1e-9;      // residual imaginary part in ensemble sums
};

// A full run description, as read from a config file.
struct RunConfig {
  std::string f1_text;
  std::string f2_text;
  Rational t_start = Rational(0);
  Rational t_end = Rational(1);
  long steps = 200;
  Tolerances tol;
  bool exact_angular = false;  // run the exact elimination pipeline too
  int higher_sums_max = 6;     // audit power sums up to min(N, this)
  std::optional<std::string> out_trajectory; // CSV
  std::optional<std::string> out_report;     // JSON
  std::optional<std::string> out_events;     // JSON
};

// Parses `key = value` lines with '#' comments and dotted subkeys
// (tolerances.*, outputs.*).  Unknown or duplicate keys are ConfigErrors.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

} // namespace vieta
