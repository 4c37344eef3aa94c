#include "vieta/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vieta/errors.hpp"

namespace vieta {

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& a) {
  const int n = int(a.size());
  const double inf = std::numeric_limits<double>::infinity();
  // assignment by shortest augmenting paths with dual potentials (1-based)
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) match[p[j] - 1] = j - 1;
  return match;
}

namespace {

struct PairCost {
  double residual; // |F1| + |F2|
  double relative; // residual / (1 + local polynomial magnitude)
};

PairCost pair_cost(const PolySystem& sys, const Complex& x, const Complex& y,
                   double t) {
  std::array<Complex, 4> pt{x, y, Complex(t, 0.0), Complex(0.0, 0.0)};
  double r = std::abs(sys.f1.evaluate_complex(pt)) +
             std::abs(sys.f2.evaluate_complex(pt));
  double mag = sys.f1.magnitude_at(pt) + sys.f2.magnitude_at(pt);
  return {r, r / (1.0 + mag)};
}

} // namespace

std::vector<ParticleState> assemble_particles(const PolySystem& sys,
                                              const Rational& t, RootSet& xs,
                                              RootSet& ys,
                                              const Tolerances& tol) {
  const std::size_t n = xs.roots.size();
  if (ys.roots.size() != n)
    throw AssemblyFailure("root count mismatch: " + std::to_string(n) + " vs " +
                          std::to_string(ys.roots.size()));
  const double td = t.to_double();

  std::vector<std::vector<PairCost>> cost(n, std::vector<PairCost>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i][j] = pair_cost(sys, xs.roots[i], ys.roots[j], td);

  // greedy: repeatedly take the globally best unmatched pair
  std::vector<int> match(n, -1);
  {
    std::vector<char> row_used(n, 0), col_used(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (row_used[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (col_used[j]) continue;
          if (cost[i][j].relative < best) {
            best = cost[i][j].relative;
            bi = i;
            bj = j;
          }
        }
      }
      row_used[bi] = col_used[bj] = 1;
      match[bi] = int(bj);
    }
  }

  auto worst_of = [&](const std::vector<int>& m) {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i)
      w = std::max(w, cost[i][m[i]].relative);
    return w;
  };

  if (worst_of(match) > tol.tol_pair) {
    // greedy got trapped; solve the assignment exactly
    std::vector<std::vector<double>> rel(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rel[i][j] = cost[i][j].relative;
    match = min_cost_assignment(rel);
    double w = worst_of(match);
    if (w > tol.tol_pair) {
      std::ostringstream os;
      os << "cannot pair roots into solutions at t = " << t.str()
         << ": optimal matching still has relative residual " << w;
      throw AssemblyFailure(os.str());
    }
  }

  std::vector<ParticleState> ps(n);
  for (std::size_t i = 0; i < n; ++i) {
    ps[i].x = xs.roots[i];
    ps[i].y = ys.roots[match[i]];
    ps[i].residual = cost[i][match[i]].residual;
  }

  std::sort(ps.begin(), ps.end(), [](const ParticleState& a, const ParticleState& b) {
    if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
    if (a.x.imag() != b.x.imag()) return a.x.imag() < b.x.imag();
    if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
    return a.y.imag() < b.y.imag();
  });
  for (std::size_t i = 0; i < n; ++i) ps[i].id = int(i);

  // a solution is real iff both coordinates were snapped real; everything
  // else must close up into conjugate pairs
  std::vector<char> done(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (ps[i].x.imag() == 0.0 && ps[i].y.imag() == 0.0) {
      ps[i].kind = CoordKind::Real;
      ps[i].partner = -1;
      done[i] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    double ref = 1.0 + std::abs(ps[i].x) + std::abs(ps[i].y);
    std::size_t mate = n;
    double best = tol.eps_conj * ref;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (done[j]) continue;
      double d = std::abs(ps[j].x - std::conj(ps[i].x)) +
                 std::abs(ps[j].y - std::conj(ps[i].y));
      if (d <= best) {
        best = d;
        mate = j;
      }
    }
    if (mate == n)
      throw AssemblyFailure("complex solution at t = " + t.str() +
                            " has no conjugate partner");
    ps[i].kind = ps[mate].kind = CoordKind::ComplexPaired;
    ps[i].partner = int(mate);
    ps[mate].partner = int(i);
    done[i] = done[mate] = 1;
  }
  return ps;
}

std::pair<double, double> c_particle_position(const ParticleState& a,
                                              const ParticleState& b,
                                              const Tolerances& tol) {
  if (a.kind != CoordKind::ComplexPaired || b.kind != CoordKind::ComplexPaired)
    throw std::invalid_argument("c_particle_position: both states must be "
                                "conjugate-pair members");
  if (a.partner != b.id || b.partner != a.id)
    throw std::invalid_argument("c_particle_position: states are not mutual "
                                "partners");
  double ref = 1.0 + std::abs(a.x) + std::abs(a.y);
  double mismatch = std::abs(b.x - std::conj(a.x)) + std::abs(b.y - std::conj(a.y));
  if (mismatch > tol.eps_conj * ref)
    throw std::invalid_argument(
        "c_particle_position: states are not conjugate within tolerance");
  return {0.5 * (a.x.real() + b.x.real()), 0.5 * (a.y.real() + b.y.real())};
}

} // namespace vieta
