#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "support/testutil.hpp"
#include "vieta/eliminant.hpp"
#include "vieta/errors.hpp"
#include "vieta/parser.hpp"
#include "vieta/rootsolver.hpp"
#include "vieta/system.hpp"

using vieta::Complex;
using vieta::CoordKind;
using vieta::Rational;
using vieta::RootSet;
using vieta::Tolerances;
using vieta::UniPolyInT;
using vieta::UPolyQ;

namespace {

// Greedy multiset match: every computed root must sit within tol of a
// distinct oracle root.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (const auto& ra : a) {
    double best = 1e300;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(ra - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + long(best_j));
  }
  return worst;
}

UniPolyInT upoly_in_x(const char* text) {
  return UniPolyInT::from_multipoly(vieta::parse_poly(text), vieta::Var::X);
}

} // namespace

TEST_CASE("aberth agrees with the companion-matrix oracle") {
  auto g = testutil::rng(501);
  for (int trial = 0; trial < 15; ++trial) {
    const int deg = int(testutil::rand_int(g, 2, 8));
    std::vector<double> c(std::size_t(deg) + 1);
    for (auto& ci : c) ci = double(testutil::rand_int(g, -9, 9));
    if (std::abs(c.back()) < 0.5) c.back() = 3.0;
    if (c.front() == 0.0) c.front() = 1.0; // keep roots away from zero

    std::vector<Complex> cc(c.begin(), c.end());
    auto mine = vieta::aberth(cc, nullptr, 1e-12);
    auto oracle = testutil::companion_roots(c);
    CHECK(multiset_distance(mine, oracle) < 1e-8);
  }
}

TEST_CASE("solve_roots returns conjugate-closed sets") {
  auto g = testutil::rng(502);
  Tolerances tol;
  UniPolyInT R = upoly_in_x("x^5 - x^4 + t*x^2 + 2*x - t - 3");
  for (int trial = 0; trial < 10; ++trial) {
    Rational t = testutil::rand_rational(g, 10, 3);
    RootSet rs = vieta::solve_roots(R, t, nullptr, tol);
    CHECK(rs.roots.size() == 5);
    // every root's conjugate is also (numerically) present
    std::vector<Complex> conj;
    conj.reserve(rs.roots.size());
    for (auto r : rs.roots) conj.push_back(std::conj(r));
    CHECK(multiset_distance(rs.roots, conj) < 1e-9);
  }
}

TEST_CASE("classify_real snaps real roots and pairs complex ones") {
  Tolerances tol;
  // x^2 - t at t = 4: roots exactly +-2
  UniPolyInT R = upoly_in_x("x^2 - t");
  RootSet rs = vieta::solve_roots(R, Rational(4), nullptr, tol);
  auto kinds = vieta::classify_real(rs, tol);
  REQUIRE(rs.roots.size() == 2);
  CHECK(kinds[0] == CoordKind::Real);
  CHECK(kinds[1] == CoordKind::Real);
  for (auto r : rs.roots) {
    CHECK(r.imag() == 0.0); // snapped exactly
    CHECK(std::abs(std::abs(r.real()) - 2.0) < 1e-12);
  }

  // t = -4: roots +-2i, complex-paired
  RootSet rs2 = vieta::solve_roots(R, Rational(-4), nullptr, tol);
  auto kinds2 = vieta::classify_real(rs2, tol);
  CHECK(kinds2[0] == CoordKind::ComplexPaired);
  CHECK(kinds2[1] == CoordKind::ComplexPaired);
}

TEST_CASE("warm starts track a drifting configuration") {
  Tolerances tol;
  UniPolyInT R = upoly_in_x("x^3 - t*x - 1");
  RootSet prev = vieta::solve_roots(R, Rational(0), nullptr, tol);
  for (int k = 1; k <= 40; ++k) {
    Rational t(k, 10);
    RootSet cur = vieta::solve_roots(R, t, &prev, tol);
    CHECK(cur.roots.size() == 3);
    // warm-started roots stay close to the previous sample
    CHECK(multiset_distance(cur.roots, prev.roots) < 0.5);
    prev = cur;
  }
}

TEST_CASE("exact zero roots are stripped and restored") {
  Tolerances tol;
  // x^3 - t*x^2 = x^2 (x - t): double root at 0 plus root t
  UniPolyInT R = upoly_in_x("x^3 - t*x^2");
  RootSet rs = vieta::solve_roots(R, Rational(5), nullptr, tol);
  REQUIRE(rs.roots.size() == 3);
  int zeros = 0;
  bool saw_t = false;
  for (auto r : rs.roots) {
    if (std::abs(r) == 0.0) ++zeros;
    if (std::abs(r - Complex(5.0, 0.0)) < 1e-9) saw_t = true;
  }
  CHECK(zeros == 2);
  CHECK(saw_t);
}

TEST_CASE("clustered roots share a cluster label") {
  Tolerances tol;
  // (x - 1)^2 (x + 2) at any t: the double root forms one cluster
  UniPolyInT R = upoly_in_x("x^3 - 3*x + 2");
  RootSet rs = vieta::solve_roots(R, Rational(0), nullptr, tol);
  REQUIRE(rs.roots.size() == 3);
  REQUIRE(rs.cluster.size() == 3);
  int label_of_one = -1, label_count = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(rs.roots[i] - Complex(1.0, 0.0)) < 1e-4) {
      if (label_of_one == -1) label_of_one = rs.cluster[i];
      CHECK(rs.cluster[i] == label_of_one);
      ++label_count;
    }
  }
  CHECK(label_count == 2);
}

TEST_CASE("degenerate inputs to the iterator") {
  // Vanishing leading coefficient is a caller bug.
  std::vector<Complex> bad{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  CHECK_THROWS_AS(vieta::aberth(bad, nullptr, 1e-12), std::invalid_argument);
  // A nonzero constant has no roots.
  CHECK(vieta::aberth({Complex(1.0, 0.0)}, nullptr, 1e-12).empty());
}
