#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "support/testutil.hpp"
#include "vieta/assemble.hpp"
#include "vieta/eliminant.hpp"
#include "vieta/parser.hpp"
#include "vieta/rootsolver.hpp"
#include "vieta/system.hpp"

using vieta::Complex;
using vieta::CoordKind;
using vieta::Eliminants;
using vieta::ParticleState;
using vieta::Rational;
using vieta::RootSet;
using vieta::Tolerances;

namespace {

// Brute-force optimal assignment by permutation enumeration.
double brute_force_cost(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = 1e300;
  do {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += cost[i][perm[i]];
    best = std::min(best, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<ParticleState> assemble_at(const vieta::PolySystem& sys,
                                       const Eliminants& el, const Rational& t,
                                       const Tolerances& tol) {
  RootSet xs = vieta::solve_roots(el.in_x.poly, t, nullptr, tol);
  RootSet ys = vieta::solve_roots(el.in_y.poly, t, nullptr, tol);
  vieta::classify_real(xs, tol);
  vieta::classify_real(ys, tol);
  return vieta::assemble_particles(sys, t, xs, ys, tol);
}

} // namespace

TEST_CASE("hungarian assignment matches permutation enumeration") {
  auto g = testutil::rng(601);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::vector<double>> cost(n, std::vector<double>(n));
      for (auto& row : cost)
        for (auto& c : row)
          c = double(testutil::rand_int(g, 0, 1000)) / 10.0;
      auto match = vieta::min_cost_assignment(cost);
      REQUIRE(match.size() == n);
      // valid permutation
      std::vector<bool> used(n, false);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(match[i] >= 0);
        REQUIRE(std::size_t(match[i]) < n);
        CHECK(!used[std::size_t(match[i])]);
        used[std::size_t(match[i])] = true;
        total += cost[i][std::size_t(match[i])];
      }
      CHECK(total == doctest::Approx(brute_force_cost(cost)).epsilon(1e-12));
    }
  }
}

TEST_CASE("assembled particles satisfy both constraints") {
  auto sys = vieta::load_system(
      vieta::parse_poly("-2*x^3 + y^3 + t*x + t*y + y + 2"),
      vieta::parse_poly("-x^3 - 2*x^2*y + t + 3"));
  Eliminants el = vieta::eliminants(sys);
  Tolerances tol;

  for (Rational t : {Rational(0), Rational(1), Rational(-2), Rational(7, 3)}) {
    auto parts = assemble_at(sys, el, t, tol);
    REQUIRE(parts.size() == 9);
    const std::array<Complex, 4> base{Complex(0), Complex(0),
                                      Complex(t.to_double()), Complex(0)};
    for (const auto& p : parts) {
      auto pt = base;
      pt[0] = p.x;
      pt[1] = p.y;
      const double r1 = std::abs(sys.f1.evaluate_complex(pt));
      const double r2 = std::abs(sys.f2.evaluate_complex(pt));
      const double scale =
          sys.f1.magnitude_at(pt) + sys.f2.magnitude_at(pt) + 1.0;
      CHECK(r1 + r2 < 1e-7 * scale);
      CHECK(p.residual < 1e-7 * scale);
    }
  }
}

TEST_CASE("ids are stable sort ranks and partners are mutual") {
  auto sys = vieta::load_system(
      vieta::parse_poly("-2*x^3 + y^3 + t*x + t*y + y + 2"),
      vieta::parse_poly("-x^3 - 2*x^2*y + t + 3"));
  Eliminants el = vieta::eliminants(sys);
  Tolerances tol;
  auto parts = assemble_at(sys, el, Rational(1, 2), tol);
  REQUIRE(parts.size() == 9);

  for (std::size_t i = 0; i < parts.size(); ++i)
    CHECK(parts[i].id == int(i));
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const auto &a = parts[i], &b = parts[i + 1];
    const auto key = [](const ParticleState& p) {
      return std::array<double, 4>{p.x.real(), p.x.imag(), p.y.real(),
                                   p.y.imag()};
    };
    CHECK(key(a) <= key(b));
  }

  int complex_count = 0;
  for (const auto& p : parts) {
    if (p.kind == CoordKind::ComplexPaired) {
      ++complex_count;
      REQUIRE(p.partner >= 0);
      REQUIRE(p.partner < int(parts.size()));
      const auto& q = parts[std::size_t(p.partner)];
      CHECK(q.partner == p.id);
      CHECK(std::abs(p.x - std::conj(q.x)) < 1e-7);
      CHECK(std::abs(p.y - std::conj(q.y)) < 1e-7);
      // shared real-plane position is consistent
      auto [px, py] = vieta::c_particle_position(p, q, tol);
      CHECK(px == doctest::Approx(p.x.real()));
      CHECK(py == doctest::Approx(p.y.real()));
    } else {
      CHECK(p.partner == -1);
      CHECK(p.x.imag() == 0.0);
      CHECK(p.y.imag() == 0.0);
    }
  }
  CHECK(complex_count % 2 == 0);
}

TEST_CASE("mismatched pairing is rejected") {
  // Hand the assembler root sets from two different systems so no pairing
  // can satisfy the constraints.
  auto sys = vieta::load_system(vieta::parse_poly("x^2 - t"),
                                vieta::parse_poly("y - x"));
  auto other = vieta::load_system(vieta::parse_poly("x^2 - t - 100"),
                                  vieta::parse_poly("y - x"));
  Eliminants el = vieta::eliminants(sys);
  Eliminants elo = vieta::eliminants(other);
  Tolerances tol;
  Rational t(4);
  RootSet xs = vieta::solve_roots(elo.in_x.poly, t, nullptr, tol);
  RootSet ys = vieta::solve_roots(el.in_y.poly, t, nullptr, tol);
  vieta::classify_real(xs, tol);
  vieta::classify_real(ys, tol);
  CHECK_THROWS_AS(vieta::assemble_particles(sys, t, xs, ys, tol),
                  vieta::AssemblyFailure);
}
