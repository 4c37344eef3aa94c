#include <doctest.h>

#include "vieta/errors.hpp"
#include "vieta/multipoly.hpp"
#include "vieta/parser.hpp"

using vieta::MultiPoly;
using vieta::parse_poly;
using vieta::ParseError;
using vieta::Rational;
using vieta::Var;

TEST_CASE("parser handles signs, fractions, powers, and grouping") {
  CHECK(parse_poly("-x") == MultiPoly(-1) * MultiPoly::variable(Var::X));
  CHECK(parse_poly("+3/2") == MultiPoly(Rational(3, 2)));
  CHECK(parse_poly("x^0") == MultiPoly(1));
  CHECK(parse_poly("(x + y)*(x - y)") == parse_poly("x^2 - y^2"));
  CHECK(parse_poly("2*(x + 1) - 2*x") == MultiPoly(2));
  CHECK(parse_poly("M*t") == parse_poly("t*M"));
  CHECK(parse_poly(" x \t+\n y ") == parse_poly("x+y"));
}

TEST_CASE("parser accepts two groupings of the same constraint pair") {
  // Same polynomial written coefficient-grouped and degree-grouped.
  MultiPoly f1_by_t = parse_poly(
      "(3*x^3 - 2*x^2*y + 5*x*y^2 + 7*y^3) + (6*t - 1)*x^2 - (9*t + 1)*x*y"
      " - (5*t + 3)*y^2 + (7*t^2 - 10*t + 3)*x - (4*t^2 + 11*t - 2)*y"
      " + (6*t^3 - 9*t^2 - 13*t - 8)");
  MultiPoly f1_by_deg = parse_poly(
      "(3*x^3 + 7*y^3 + 6*t^3 - 2*x^2*y + 5*x*y^2 + 7*t^2*x - 4*t^2*y"
      " + 6*t*x^2 - 5*t*y^2 - 9*x*y*t) + (-x^2 - 3*y^2 - 9*t^2 - x*y"
      " - 10*t*x - 11*t*y) + (3*x + 2*y - 13*t) - 8");
  CHECK(f1_by_t == f1_by_deg);

  MultiPoly f2_by_t = parse_poly(
      "(7*x^2 + 17*x*y - 12*y^2) + (5*t + 19)*x - (11*t - 21)*y"
      " - (4*t^2 - 3*t - 1)");
  MultiPoly f2_by_deg = parse_poly(
      "(7*x^2 - 12*y^2 - 4*t^2 + 17*x*y + 5*t*x - 11*t*y)"
      " + (19*x + 21*y + 3*t) + 1");
  CHECK(f2_by_t == f2_by_deg);
}

TEST_CASE("parser demands explicit multiplication") {
  CHECK_THROWS_AS(parse_poly("2x"), ParseError);
  CHECK_THROWS_AS(parse_poly("x y"), ParseError);
  CHECK_THROWS_AS(parse_poly("3(x+1)"), ParseError);
}

TEST_CASE("parser rejects decimals and malformed input") {
  CHECK_THROWS_AS(parse_poly("1.5*x"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^-1"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^(2)"), ParseError);
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  CHECK_THROWS_AS(parse_poly("x +"), ParseError);
  CHECK_THROWS_AS(parse_poly("(x"), ParseError);
  CHECK_THROWS_AS(parse_poly("z"), ParseError);
  CHECK_THROWS_AS(parse_poly("x / y"), ParseError);
}

TEST_CASE("parser reports the byte offset of the failure") {
  try {
    parse_poly("x + 2y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5); // the 'y' that follows a number
  }
  try {
    parse_poly("x*");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("parser round trips the canonical printer") {
  for (const char* text : {
           "x^3 - 2*x*y + y^2 - t + 1",
           "M^2*t - 1/3*x",
           "-7/2",
           "x*y*t*M",
       }) {
    MultiPoly p = parse_poly(text);
    CHECK(parse_poly(p.str()) == p);
  }
}
