#include <doctest.h>

#include "support/testutil.hpp"
#include "vieta/errors.hpp"
#include "vieta/multipoly.hpp"
#include "vieta/parser.hpp"

using vieta::MultiPoly;
using vieta::Rational;
using vieta::Var;

namespace {
MultiPoly rand_poly(std::mt19937_64& g) {
  MultiPoly p;
  const int terms = int(testutil::rand_int(g, 1, 8));
  for (int i = 0; i < terms; ++i) {
    MultiPoly m(testutil::rand_rational(g, 9, 4));
    m *= MultiPoly::variable(Var::X, std::uint32_t(testutil::rand_int(g, 0, 3)));
    m *= MultiPoly::variable(Var::Y, std::uint32_t(testutil::rand_int(g, 0, 3)));
    m *= MultiPoly::variable(Var::T, std::uint32_t(testutil::rand_int(g, 0, 2)));
    p += m;
  }
  return p;
}
} // namespace

TEST_CASE("multipoly ring axioms on random polynomials") {
  auto g = testutil::rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    MultiPoly a = rand_poly(g), b = rand_poly(g), c = rand_poly(g);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MultiPoly());
    CHECK(a * MultiPoly() == MultiPoly());
    CHECK(a * MultiPoly(Rational(1)) == a);
  }
}

TEST_CASE("multipoly evaluation commutes with arithmetic") {
  auto g = testutil::rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly a = rand_poly(g), b = rand_poly(g);
    const std::array<double, 4> pt{double(testutil::rand_int(g, -3, 3)) / 2.0,
                                   double(testutil::rand_int(g, -3, 3)) / 2.0,
                                   double(testutil::rand_int(g, -3, 3)) / 2.0,
                                   0.0};
    const double lhs = (a * b + a).evaluate_point(pt);
    const double rhs = a.evaluate_point(pt) * b.evaluate_point(pt) +
                       a.evaluate_point(pt);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("multipoly degrees and leading data") {
  MultiPoly p = vieta::parse_poly("3*x^2*y - y^3*t + 5*x - 7");
  CHECK(p.degree(Var::X) == 2);
  CHECK(p.degree(Var::Y) == 3);
  CHECK(p.degree(Var::T) == 1);
  CHECK(p.degree_xy() == 4);
  CHECK(MultiPoly().degree(Var::X) == -1);

  MultiPoly q = p.coefficient_of(Var::X, 2);
  CHECK(q == vieta::parse_poly("3*y"));
}

TEST_CASE("multipoly derivative satisfies the product rule") {
  auto g = testutil::rng(103);
  for (int trial = 0; trial < 15; ++trial) {
    MultiPoly a = rand_poly(g), b = rand_poly(g);
    for (Var v : {Var::X, Var::Y, Var::T}) {
      CHECK((a * b).derivative(v) ==
            a.derivative(v) * b + a * b.derivative(v));
    }
  }
  CHECK(vieta::parse_poly("x^3").derivative(Var::X) ==
        vieta::parse_poly("3*x^2"));
  CHECK(vieta::parse_poly("7").derivative(Var::T) == MultiPoly());
}

TEST_CASE("multipoly exact division round trips and rejects remainders") {
  auto g = testutil::rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly a = rand_poly(g), b = rand_poly(g);
    if (b.is_zero()) continue;
    CHECK((a * b).exact_divide(b) == a);
  }
  MultiPoly num = vieta::parse_poly("x^2 + 1");
  MultiPoly den = vieta::parse_poly("x + 1");
  CHECK_THROWS_AS(num.exact_divide(den), vieta::DivisionFailed);
}

TEST_CASE("multipoly content and scaling") {
  MultiPoly p = vieta::parse_poly("4/3*x^2 - 2/3*y + 8/3");
  CHECK(p.content() == Rational(2, 3));
  MultiPoly doubled = p;
  doubled.scale(Rational(2));
  CHECK(doubled == p + p);
}

TEST_CASE("multipoly text round trip through the parser") {
  auto g = testutil::rng(105);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p = rand_poly(g);
    if (p.is_zero()) continue;
    CHECK(vieta::parse_poly(p.str()) == p);
  }
}
