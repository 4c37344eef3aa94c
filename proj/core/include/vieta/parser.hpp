#pragma once

#include <string_view>

#include "vieta/multipoly.hpp"

namespace vieta {

// Parses the canonical polynomial syntax:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | var ['^' uint] | '(' expr ')'
//   rational := uint ['/' uint]
//
// Variables are x, y, t, M.  Multiplication is always explicit ('2x' is an
// error), exponents are nonnegative integers, coefficients are integers or
// fractions -- decimal literals are rejected.  Whitespace is insignificant.
// Throws ParseError with a byte offset on malformed input.
MultiPoly parse_poly(std::string_view text);

} // namespace vieta
