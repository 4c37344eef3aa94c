#include "vieta/rootsolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "vieta/errors.hpp"

namespace vieta {
namespace {

// p(z) and p'(z) by Horner, plus sum_k |c_k||z|^k as the residual scale.
struct HornerEval {
  Complex p;
  Complex dp;
  double scale;
};

HornerEval horner(const std::vector<Complex>& c, Complex z) {
  Complex p = c.back(), dp = 0;
  double az = std::abs(z), scale = std::abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
    scale = scale * az + std::abs(c[k]);
  }
  return {p, dp, scale};
}

} // namespace

std::vector<Complex> aberth(const std::vector<Complex>& coeffs,
                            const std::vector<Complex>* warm, double tol_rel,
                            int max_iterations) {
  if (coeffs.empty() || std::abs(coeffs.back()) == 0.0)
    throw std::invalid_argument("aberth: zero leading coefficient");
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  std::vector<Complex> z;
  if (warm && warm->size() == n) {
    z = *warm;
    // split exact duplicates, the update formula divides by differences
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (z[i] == z[j]) z[j] += Complex(1e-8 * (1.0 + std::abs(z[j])), 1e-8);
  } else {
    double bound = 0;
    for (std::size_t k = 0; k < n; ++k)
      bound = std::max(bound, std::abs(coeffs[k] / coeffs[n]));
    bound += 1.0;
    z.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      // fixed angular offset breaks the conjugation symmetry of the start
      double th = 2.0 * std::numbers::pi * double(j) / double(n) + 0.37;
      z[j] = 0.9 * bound * Complex(std::cos(th), std::sin(th));
    }
  }

  bool all_done = false;
  for (int it = 0; it < max_iterations && !all_done; ++it) {
    all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      auto [p, dp, scale] = horner(coeffs, z[i]);
      if (std::abs(p) <= tol_rel * std::max(scale, 1e-300)) continue;
      all_done = false;
      Complex w = (dp != Complex(0)) ? p / dp : Complex(1e-3, 1e-3);
      Complex s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += Complex(1.0) / (z[i] - z[j]);
      Complex denom = Complex(1.0) - w * s;
      z[i] -= (std::abs(denom) > 1e-12) ? w / denom : w;
    }
  }

  // Newton polish; keep a step only if it reduces the residual
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      auto [p, dp, scale] = horner(coeffs, z[i]);
      if (dp == Complex(0)) break;
      Complex cand = z[i] - p / dp;
      auto e2 = horner(coeffs, cand);
      if (std::abs(e2.p) < std::abs(p))
        z[i] = cand;
      else
        break;
    }
  }

  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto [p, dp, scale] = horner(coeffs, z[i]);
    worst = std::max(worst, std::abs(p) / std::max(scale, 1e-300));
  }
  // requests below ~1e3 ulp are not attainable in double arithmetic; do not
  // fail a run over an impossible target
  double limit = std::max(tol_rel, 1e3 * std::numeric_limits<double>::epsilon());
  if (worst > limit)
    throw SolveFailure("root iteration stalled at relative residual " +
                           std::to_string(worst),
                       worst);
  return z;
}

namespace {

void symmetrize_conjugates(std::vector<Complex>& roots, const Tolerances& tol) {
  const std::size_t n = roots.size();
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    double ref = 1.0 + std::abs(roots[i]);
    if (std::abs(roots[i].imag()) <= tol.eps_real * ref) continue; // near-real
    if (roots[i].imag() < 0) continue; // handled from the upper partner
    // nearest lower-half-plane candidate to conj(z_i)
    std::size_t best = n;
    double best_d = tol.eps_conj * ref;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || used[j] || roots[j].imag() >= 0) continue;
      double d = std::abs(roots[j] - std::conj(roots[i]));
      if (d <= best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == n) continue; // classify_real reports unpaired roots
    Complex w = (roots[i] + std::conj(roots[best])) * 0.5;
    roots[i] = w;
    roots[best] = std::conj(w);
    used[i] = used[best] = true;
  }
}

std::vector<int> cluster_labels(const std::vector<Complex>& roots,
                                double eps_cluster) {
  const std::size_t n = roots.size();
  std::vector<int> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = int(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double ref = 1.0 + std::min(std::abs(roots[i]), std::abs(roots[j]));
      if (std::abs(roots[i] - roots[j]) <= eps_cluster * ref)
        parent[find(int(i))] = find(int(j));
    }
  std::vector<int> label(n);
  std::map<int, int> relabel; // first-occurrence order -> 0, 1, 2, ...
  for (std::size_t i = 0; i < n; ++i) {
    int r = find(int(i));
    auto [it, fresh] = relabel.try_emplace(r, int(relabel.size()));
    label[i] = it->second;
  }
  return label;
}

} // namespace

RootSet solve_roots(const UniPolyInT& poly, const Rational& t,
                    const RootSet* warm, const Tolerances& tol) {
  if (poly.is_zero())
    throw std::invalid_argument("solve_roots: zero polynomial");

  // exact coefficient evaluation; low-order exact zeros are roots at the
  // origin and are deflated before the iteration
  std::vector<Rational> exact;
  exact.reserve(poly.coeffs().size());
  for (const auto& ct : poly.coeffs()) exact.push_back(ct.eval(t));
  while (!exact.empty() && exact.back().is_zero()) exact.pop_back();
  if (exact.size() <= 1)
    throw std::invalid_argument("solve_roots: polynomial vanishes to a "
                                "constant at t = " + t.str());
  std::size_t zero_mult = 0;
  while (zero_mult < exact.size() - 1 && exact[zero_mult].is_zero())
    ++zero_mult;

  std::vector<Complex> coeffs;
  for (std::size_t k = zero_mult; k < exact.size(); ++k) {
    double v = exact[k].to_double();
    if (!std::isfinite(v))
      throw std::range_error("coefficient overflows double at t = " + t.str());
    coeffs.emplace_back(v, 0.0);
  }

  std::vector<Complex> warm_roots;
  const std::vector<Complex>* warm_ptr = nullptr;
  if (warm && warm->roots.size() == exact.size() - 1) {
    // drop |zero_mult| of the warm roots closest to the origin
    warm_roots = warm->roots;
    std::sort(warm_roots.begin(), warm_roots.end(),
              [](const Complex& a, const Complex& b) {
                return std::abs(a) < std::abs(b);
              });
    warm_roots.erase(warm_roots.begin(), warm_roots.begin() + zero_mult);
    warm_ptr = &warm_roots;
  }

  RootSet rs;
  rs.t = t;
  rs.roots = aberth(coeffs, warm_ptr, tol.tol_root);
  for (std::size_t k = 0; k < zero_mult; ++k) rs.roots.emplace_back(0.0, 0.0);

  symmetrize_conjugates(rs.roots, tol);

  // deterministic presentation order: by real part, then imaginary
  std::sort(rs.roots.begin(), rs.roots.end(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });

  rs.cluster = cluster_labels(rs.roots, tol.eps_cluster);
  rs.error_estimate.resize(rs.roots.size(), 0.0);
  std::vector<Complex> full_coeffs;
  for (const auto& c : exact) full_coeffs.emplace_back(c.to_double(), 0.0);
  const double n = double(rs.roots.size());
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    auto [p, dp, scale] = horner(full_coeffs, rs.roots[i]);
    rs.error_estimate[i] =
        (std::abs(dp) > 0) ? n * std::abs(p) / std::abs(dp) : tol.eps_cluster;
  }
  return rs;
}

std::vector<CoordKind> classify_real(RootSet& rs, const Tolerances& tol) {
  const std::size_t n = rs.roots.size();
  std::vector<CoordKind> kind(n, CoordKind::Real);
  std::vector<bool> paired(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double ref = 1.0 + std::abs(rs.roots[i]);
    if (std::abs(rs.roots[i].imag()) <= tol.eps_real * ref) {
      rs.roots[i] = Complex(rs.roots[i].real(), 0.0);
      kind[i] = CoordKind::Real;
      paired[i] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (paired[i]) continue;
    double ref = 1.0 + std::abs(rs.roots[i]);
    std::size_t mate = n;
    double best = tol.eps_conj * ref;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (paired[j]) continue;
      double d = std::abs(rs.roots[j] - std::conj(rs.roots[i]));
      if (d <= best) {
        best = d;
        mate = j;
      }
    }
    if (mate == n)
      throw SolveFailure("complex root " + std::to_string(rs.roots[i].real()) +
                             (rs.roots[i].imag() < 0 ? "-" : "+") +
                             std::to_string(std::abs(rs.roots[i].imag())) +
                             "i has no conjugate partner",
                         best);
    kind[i] = kind[mate] = CoordKind::ComplexPaired;
    paired[i] = paired[mate] = true;
  }
  return kind;
}

} // namespace vieta
