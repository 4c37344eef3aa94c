#pragma once

#include <complex>
#include <vector>

#include "vieta/system.hpp"
#include "vieta/unipoly.hpp"

namespace vieta {

using Complex = std::complex<double>;

// All roots of one eliminant at one time sample.
struct RootSet {
  Rational t;
  std::vector<Complex> roots;
  std::vector<double> error_estimate; // a-posteriori per-root bound
  std::vector<int> cluster;           // roots sharing a label form one
                                      // numerically-coincident cluster
};

enum class CoordKind { Real, ComplexPaired };

// Low-level simultaneous root iteration (Aberth-Ehrlich) with Newton
// polish.  Coefficients ascending; the leading coefficient must be nonzero.
// Cold start: points on a circle of Cauchy-bound radius with a fixed
// angular offset; pass `warm` to continue from a nearby configuration.
// Throws SolveFailure if the residual target is not reached.
std::vector<Complex> aberth(const std::vector<Complex>& coeffs,
                            const std::vector<Complex>* warm, double tol_rel,
                            int max_iterations = 400);

// Solves R(main; t0) = 0 exactly-evaluated-then-numerically.  Exact zero
// roots (vanishing low-order coefficients at t0) are stripped before
// iteration and re-appended.  The returned set is symmetrized: conjugate
// partners are averaged so the set is closed under conjugation to working
// precision.
RootSet solve_roots(const UniPolyInT& poly, const Rational& t,
                    const RootSet* warm, const Tolerances& tol);

// Tags each root Real (imaginary part below eps_real, snapped to exactly
// zero in place) or ComplexPaired.  Throws SolveFailure if a complex root
// has no conjugate partner within eps_conj.
std::vector<CoordKind> classify_real(RootSet& rs, const Tolerances& tol);

} // namespace vieta
