#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace vieta {

// The four symbols the engine knows about.  x, y are coordinates, t is the
// external parameter, M is reserved for momentum eliminants.
enum class Var : std::uint8_t { X = 0, Y = 1, T = 2, M = 3 };

inline constexpr std::array<Var, 4> all_vars = {Var::X, Var::Y, Var::T, Var::M};

inline const char* var_name(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::Y: return "y";
    case Var::T: return "t";
    case Var::M: return "M";
  }
  return "?";
}

inline std::optional<Var> var_from_char(char c) {
  switch (c) {
    case 'x': return Var::X;
    case 'y': return Var::Y;
    case 't': return Var::T;
    case 'M': return Var::M;
    default: return std::nullopt;
  }
}

} // namespace vieta
