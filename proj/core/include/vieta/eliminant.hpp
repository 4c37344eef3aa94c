#pragma once

#include "vieta/resultant.hpp"
#include "vieta/system.hpp"
#include "vieta/unipoly.hpp"
#include "vieta/upolyq.hpp"

namespace vieta {

// Eliminant of a system w.r.t. one coordinate: R(main; t) whose roots at
// fixed t are the `main`-coordinates of the system's solutions.
struct Eliminant {
  UniPolyInT poly;        // degree N = n*m in `main`
  Var eliminated;          // the coordinate that was eliminated
  Rational lead;           // constant leading coefficient (equals +-f_N)
};

struct Eliminants {
  Eliminant in_x; // main variable x (y eliminated)
  Eliminant in_y; // main variable y (x eliminated)
  Rational f;     // resultant of the two leading forms (Vieta scale factor)
};

// Resultant of the leading homogeneous (x,y)-forms of F1 and F2, computed
// from both coefficient orientations (powers of x and powers of y) as a
// cross-check.  Throws DegenerateSystem when it vanishes: the system then
// has fewer than n*m solutions for generic t and the particle count is not
// conserved.
Rational leading_form_resultant(const PolySystem& sys);

// Computes both eliminants as raw Sylvester determinants and verifies the
// degree and leading-coefficient structure (degree exactly N, constant
// leading coefficient equal to the leading-form resultant up to sign).
Eliminants eliminants(const PolySystem& sys,
                      const ResultantOptions& opt = {});

// Discriminant of an eliminant in its main variable: Res(R, dR/dmain) / lead,
// an exact polynomial in t.  Roots are the t-values where the eliminant has
// a multiple root (particle collisions in that coordinate).
UPolyQ discriminant(const Eliminant& e, const ResultantOptions& opt = {});

// Monic gcd of the two discriminants: the common factor D(t) whose real
// roots are the candidate event times.
UPolyQ common_factor(const UPolyQ& disc_x, const UPolyQ& disc_y);

} // namespace vieta
