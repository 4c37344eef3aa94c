#include "vieta/parser.hpp"

#include <cctype>

#include "vieta/errors.hpp"

namespace vieta {
namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    char c = peek();
    ++i;
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

  Int integer(const char* what) {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
      if (i < s.size() && s[i] == '-') fail(std::string("negative ") + what);
      fail(std::string("expected ") + what);
    }
    Int acc = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      acc = acc * 10 + (s[i] - '0');
      ++i;
    }
    if (i < s.size() && s[i] == '.')
      fail("decimal literals are not supported, use p/q");
    return acc;
  }

  MultiPoly expr();

  MultiPoly factor() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = integer("integer");
      if (peek() == '/') {
        take();
        Int den = integer("denominator");
        if (den == 0) fail("zero denominator");
        return MultiPoly(Rational(num, den));
      }
      if (peek() == '^') fail("exponent on a numeric literal");
      return MultiPoly(Rational(num));
    }
    if (auto v = var_from_char(c)) {
      take();
      if (peek() == '^') {
        take();
        Int e = integer("exponent");
        if (!e.fits_uint_p()) fail("exponent too large");
        return MultiPoly::variable(*v, static_cast<std::uint32_t>(e.get_ui()));
      }
      return MultiPoly::variable(*v);
    }
    if (c == '(') {
      take();
      MultiPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      take();
      return inner;
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        take();
        acc *= factor();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '(' ||
                 var_from_char(c)) {
        fail("missing '*' (implicit multiplication is not allowed)");
      } else {
        return acc;
      }
    }
  }
};

MultiPoly Cursor::expr() {
  MultiPoly acc;
  bool first = true;
  for (;;) {
    skip_ws();
    char c = peek();
    bool neg = false;
    if (c == '+' || c == '-') {
      neg = (c == '-');
      take();
    } else if (!first) {
      return acc; // caller checks the terminator
    }
    MultiPoly t = term();
    if (neg)
      acc -= t;
    else
      acc += t;
    first = false;
    c = peek();
    if (c != '+' && c != '-') return acc;
  }
}

} // namespace

MultiPoly parse_poly(std::string_view text) {
  Cursor cur{text};
  if (cur.done()) throw ParseError("empty polynomial", 0);
  MultiPoly p = cur.expr();
  if (!cur.done()) cur.fail("trailing input");
  return p;
}

} // namespace vieta
