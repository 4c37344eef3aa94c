#pragma once

#include <cstddef>
#include <vector>

#include "vieta/multipoly.hpp"

namespace vieta {

// Sylvester matrix of two polynomials w.r.t. one variable.  Entries are
// polynomials in the remaining variables.  Rows 0..deg(q)-1 carry the
// coefficients of p (descending, shifted right by the row index), the rest
// carry q's.
struct SylvesterMatrix {
  Var eliminated = Var::X;
  std::size_t dim = 0;
  std::vector<MultiPoly> entries; // row-major, dim*dim

  const MultiPoly& at(std::size_t i, std::size_t j) const {
    return entries[i * dim + j];
  }
  MultiPoly& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
};

// Requires both polynomials to have positive degree in `var`; throws
// std::invalid_argument otherwise.
SylvesterMatrix sylvester(const MultiPoly& p, const MultiPoly& q, Var var);

// Exact determinant by fraction-free Gaussian elimination (Bareiss).  All
// intermediate divisions are exact.  `term_budget`, if nonzero, bounds the
// total number of stored terms across the active submatrix; exceeding it
// raises TermBudgetExceeded (internal) unless budget checking is disabled.
MultiPoly bareiss_determinant(std::vector<MultiPoly> m, std::size_t dim,
                              std::size_t term_budget = 0);

struct ResultantOptions {
  // When Bareiss intermediate swell crosses this many total terms the
  // computation restarts as evaluation/interpolation over a spectator
  // variable.  0 disables the budget.
  std::size_t term_budget = 20000;
  bool allow_interpolation = true;
};

// Resultant of p and q w.r.t. `var`.  Degenerate degrees follow the usual
// conventions: if deg_var(p) == 0, Res = p^deg_var(q) (and symmetrically);
// both degrees zero is an error (nothing to eliminate).
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, Var var,
                    const ResultantOptions& opt = {});

} // namespace vieta
