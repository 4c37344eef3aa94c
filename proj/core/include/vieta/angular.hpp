#pragma once

#include <cstdint>

#include "vieta/eliminant.hpp"
#include "vieta/system.hpp"
#include "vieta/upolyq.hpp"

namespace vieta {

struct AngularExactOptions {
  int max_primes = 512;       // CRT safety cap
  int stable_streak = 2;      // consecutive unchanged lifts before stopping
  unsigned long mpf_bits = 768; // precision for momentum refinement
  int max_nodes = 64;         // cap on reconstruction sample times
};

// Output of the exact angular-momentum elimination pipeline.
struct AngularExactResult {
  MultiPoly eliminated;     // E(M, t): the full eliminated polynomial
  MultiPoly proper;         // primitive factor of degree N in M
  MultiPoly redundant;      // E / proper
  long deg_m_total = 0;
  long deg_m_proper = 0;
  long deg_m_redundant = 0;
  UPolyQ alpha;             // proper's M^N coefficient (a polynomial in t:
                            // it absorbs the velocity poles at event times)
  UPolyQ beta;              // proper's M^{N-1} coefficient
  Rational mz;              // total angular momentum = -beta/alpha, exact
  Rational lead_ratio;      // leading coefficient of alpha over the
                            // eliminant's constant lead
  bool alpha_matches_common_factor = false; // alpha proportional to D(t)
  std::size_t primes_used = 0;
};

// Numerator of M - (x v_y - y v_x) after substituting the implicit
// velocities and clearing denominators:
//   Phi = M dR_x/dy dR_y/dx + x dR_x/dt dR_y/dx - y dR_y/dt dR_x/dy,
// a polynomial in (M, x, y, t) vanishing at every (momentum, position) of
// the flow.
MultiPoly angular_constraint(const Eliminants& el);

// Exact total angular momentum via elimination:
//  1. E(M, t) = Res_y(Res_x(Phi, F1), Res_x(Phi, F2)), computed over a
//     grid of 62-bit prime fields with Chinese remaindering (degrees are
//     discovered modulo the first prime and the result is verified against
//     a fresh prime at a random point).
//  2. The proper degree-N factor is reconstructed from high-precision
//     per-particle momenta at integer times.  Individual momenta diverge at
//     event times (the implicit velocities have simple poles where the
//     discriminants vanish), so what is rationalized and interpolated is
//     D(t_j) times each monic coefficient -- a polynomial with bounded
//     denominators -- and the surplus part of D(t) is stripped again as the
//     polynomial content of the assembled factor.  The result is verified
//     by exact division of E.
//  3. M_z = -(M^{N-1} coefficient)/(M^N coefficient), asserted t-free.
// Throws PipelineFailure when reconstruction or verification fails.
AngularExactResult angular_momentum_exact(const PolySystem& sys,
                                          const Eliminants& el,
                                          const Tolerances& tol,
                                          const AngularExactOptions& opt = {});

} // namespace vieta
