#pragma once

#include <stdexcept>
#include <string>

namespace vieta {

// Input text could not be parsed.  `position` is a 0-based byte offset into
// the offending string.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// A configuration file or config value is invalid.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The polynomial system violates a structural precondition of the
// elimination step (degree drop, vanishing leading form, nothing to
// eliminate, ...).
class DegenerateSystem : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact polynomial division had a nonzero remainder where theory says it
// must be exact.  Always indicates a logic error or a violated precondition.
class DivisionFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric root finding did not converge to the requested residual.
class SolveFailure : public std::runtime_error {
public:
  SolveFailure(std::string msg, double worst_residual)
      : std::runtime_error(std::move(msg)), worst_residual_(worst_residual) {}
  double worst_residual() const noexcept { return worst_residual_; }

private:
  double worst_residual_ = 0.0;
};

// Root pairing could not produce a consistent particle assembly within
// tolerance.
class AssemblyFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A derivative-based quantity was requested too close to a critical point:
// the implicit-function denominator is (numerically) zero.
class NearEvent : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The exact angular-momentum pipeline could not complete (rationalization,
// interpolation, or factor verification failed).  The message carries the
// stage and the offending data.
class PipelineFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace vieta
