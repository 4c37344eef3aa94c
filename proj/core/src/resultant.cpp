#include "vieta/resultant.hpp"

#include <algorithm>
#include <stdexcept>

#include "vieta/errors.hpp"

namespace vieta {
namespace {

struct TermBudgetExceeded {};

std::vector<MultiPoly> coeffs_descending(const MultiPoly& p, Var var, long deg) {
  std::vector<MultiPoly> c;
  c.reserve(deg + 1);
  for (long k = deg; k >= 0; --k)
    c.push_back(p.coefficient_of(var, static_cast<std::uint32_t>(k)));
  return c;
}

} // namespace

SylvesterMatrix sylvester(const MultiPoly& p, const MultiPoly& q, Var var) {
  long dp = p.degree(var), dq = q.degree(var);
  if (dp < 1 || dq < 1)
    throw std::invalid_argument(
        "sylvester: both polynomials need positive degree in " +
        std::string(var_name(var)));
  SylvesterMatrix s;
  s.eliminated = var;
  s.dim = static_cast<std::size_t>(dp + dq);
  s.entries.assign(s.dim * s.dim, MultiPoly());
  auto pc = coeffs_descending(p, var, dp);
  auto qc = coeffs_descending(q, var, dq);
  for (long row = 0; row < dq; ++row)
    for (long k = 0; k <= dp; ++k) s.at(row, row + k) = pc[k];
  for (long row = 0; row < dp; ++row)
    for (long k = 0; k <= dq; ++k) s.at(dq + row, row + k) = qc[k];
  return s;
}

MultiPoly bareiss_determinant(std::vector<MultiPoly> m, std::size_t dim,
                              std::size_t term_budget) {
  if (dim == 0) return MultiPoly(1);
  auto at = [&](std::size_t i, std::size_t j) -> MultiPoly& {
    return m[i * dim + j];
  };
  int sign = 1;
  MultiPoly prev(1);
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < dim && at(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == dim) return MultiPoly(); // zero column: det = 0
      for (std::size_t j = 0; j < dim; ++j)
        std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    std::size_t total_terms = 0;
    for (std::size_t i = k + 1; i < dim; ++i) {
      for (std::size_t j = k + 1; j < dim; ++j) {
        MultiPoly num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        at(i, j) = num.exact_divide(prev);
        total_terms += at(i, j).num_terms();
      }
      at(i, k) = MultiPoly();
    }
    if (term_budget && total_terms > term_budget) throw TermBudgetExceeded{};
    prev = at(k, k);
  }
  MultiPoly det = at(dim - 1, dim - 1);
  if (sign < 0) det = -det;
  return det;
}

namespace {

// Spectator variable with the largest total degree presence in p and q,
// excluding `var`.  nullopt if p, q involve no other variable.
std::optional<Var> pick_spectator(const MultiPoly& p, const MultiPoly& q, Var var) {
  std::optional<Var> best;
  long best_deg = 0;
  for (Var v : all_vars) {
    if (v == var) continue;
    long d = std::max(p.degree(v), q.degree(v));
    if (d > best_deg) {
      best_deg = d;
      best = v;
    }
  }
  return best;
}

MultiPoly resultant_by_interpolation(const MultiPoly& p, const MultiPoly& q,
                                     Var var, Var spec,
                                     const ResultantOptions& opt) {
  long dp = p.degree(var), dq = q.degree(var);
  // deg_spec(Res) <= dq * deg_spec(p) + dp * deg_spec(q)
  long dbound = dq * std::max(p.degree(spec), 0L) + dp * std::max(q.degree(spec), 0L);
  MultiPoly lp = p.leading_coefficient(var);
  MultiPoly lq = q.leading_coefficient(var);

  std::vector<Rational> nodes;
  std::vector<MultiPoly> values;
  nodes.reserve(dbound + 1);
  long probe = 0;
  while (long(nodes.size()) <= dbound) {
    Rational c(probe);
    // alternate 0, 1, -1, 2, -2, ...
    probe = probe <= 0 ? -probe + 1 : -probe;
    // the evaluated resultant only equals the evaluated determinant if the
    // leading coefficients survive the substitution
    if (lp.substitute(spec, c).is_zero() || lq.substitute(spec, c).is_zero())
      continue;
    MultiPoly pv = p.substitute(spec, c);
    MultiPoly qv = q.substitute(spec, c);
    values.push_back(resultant(pv, qv, var, opt));
    nodes.push_back(c);
  }

  // Newton form: divided differences with polynomial values
  std::vector<MultiPoly> dd = values;
  for (std::size_t level = 1; level < dd.size(); ++level) {
    for (std::size_t i = dd.size() - 1; i >= level; --i) {
      MultiPoly num = dd[i] - dd[i - 1];
      Rational den = nodes[i] - nodes[i - level];
      num.scale(den.inverse());
      dd[i] = std::move(num);
      if (i == level) break;
    }
  }
  MultiPoly acc = dd.back();
  for (std::size_t i = dd.size() - 1; i-- > 0;) {
    MultiPoly lin = MultiPoly::variable(spec) - MultiPoly(nodes[i]);
    acc = acc * lin + dd[i];
  }
  return acc;
}

} // namespace

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, Var var,
                    const ResultantOptions& opt) {
  long dp = p.degree(var), dq = q.degree(var);
  if (dp <= 0 && dq <= 0)
    throw std::invalid_argument("resultant: neither polynomial involves " +
                                std::string(var_name(var)));
  if (dp <= 0) return p.pow(static_cast<unsigned>(dq));
  if (dq <= 0) return q.pow(static_cast<unsigned>(dp));

  SylvesterMatrix s = sylvester(p, q, var);
  try {
    return bareiss_determinant(std::move(s.entries), s.dim,
                               opt.allow_interpolation ? opt.term_budget : 0);
  } catch (const TermBudgetExceeded&) {
    auto spec = pick_spectator(p, q, var);
    if (!spec) {
      // no spectator to interpolate over; redo without the budget
      SylvesterMatrix s2 = sylvester(p, q, var);
      return bareiss_determinant(std::move(s2.entries), s2.dim, 0);
    }
    return resultant_by_interpolation(p, q, var, *spec, opt);
  }
}

} // namespace vieta
