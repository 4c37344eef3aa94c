#pragma once

#include <utility>
#include <vector>

#include "vieta/rootsolver.hpp"

namespace vieta {

// One solution of F1 = F2 = 0 at a fixed t, with an identity.
struct ParticleState {
  int id = -1;
  Complex x;
  Complex y;
  CoordKind kind = CoordKind::Real; // Real solution or conjugate-pair member
  int partner = -1;                 // id of the conjugate partner, -1 if real
  double residual = 0.0;            // |F1| + |F2| at (x, y, t)
};

// Exact-cost optimal assignment (Hungarian algorithm with potentials) on a
// square cost matrix; returns the column matched to each row.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

// Pairs the x-roots with the y-roots into N solutions by system residual:
// greedy matching first, optimal assignment when greedy leaves a pair above
// tolerance.  Both root sets must already be classified (classify_real).
// Solutions are sorted by (Re x, Im x, Re y, Im y) and ids assigned in that
// order; complex solutions carry partner links.  Throws AssemblyFailure if
// even the optimal matching leaves a residual above tol_pair * scale, or if
// a complex solution has no conjugate partner.
std::vector<ParticleState> assemble_particles(const PolySystem& sys,
                                              const Rational& t, RootSet& xs,
                                              RootSet& ys,
                                              const Tolerances& tol);

// Shared real-plane position of a conjugate pair: (Re x, Re y).  Verifies
// the two states are mutual partners and conjugate within eps_conj.
std::pair<double, double> c_particle_position(const ParticleState& a,
                                              const ParticleState& b,
                                              const Tolerances& tol);

} // namespace vieta
