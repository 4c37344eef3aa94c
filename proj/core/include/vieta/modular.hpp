#pragma once

#include <cstdint>
#include <vector>

#include "vieta/rational.hpp"

namespace vieta {

// Arithmetic modulo one odd prime p < 2^62, in Montgomery form throughout.
// Values handled by add/sub/mul/pow/inv are Montgomery representatives;
// convert with to()/from().  Montgomery keeps the hot evaluation loops free
// of hardware division.
class Fp {
public:
  explicit Fp(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t to(std::uint64_t x) const;   // x < p -> Montgomery form
  std::uint64_t from(std::uint64_t a) const; // Montgomery -> canonical

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return redc(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const; // a != 0

  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return one_; }

  // Reductions of exact values into Montgomery form.  reduce(Rational)
  // throws std::domain_error if the denominator vanishes mod p (the caller
  // should discard the prime as unusable).
  std::uint64_t reduce(const Int& z) const;
  std::uint64_t reduce(const Rational& q) const;

private:
  std::uint64_t redc(unsigned __int128 t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * ninv_;
    std::uint64_t r = static_cast<std::uint64_t>(
        (t + static_cast<unsigned __int128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }
  std::uint64_t p_ = 0, ninv_ = 0, r2_ = 0, one_ = 0;
};

// Stream of distinct primes in (2^61, 2^62), ascending.
class PrimeSource {
public:
  std::uint64_t next();

private:
  Int cursor_ = (Int(1) << 61) + 1;
};

// Dense univariate polynomial over Fp: ascending coefficients in Montgomery
// form, no trailing zeros (enforce with fp_trim).
using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& a);
long fp_degree(const FpPoly& a); // -1 for zero

std::uint64_t fp_eval(const Fp& F, const FpPoly& a, std::uint64_t x);

// In-place Gaussian elimination determinant of a dim x dim row-major
// matrix (destroyed).
std::uint64_t fp_det(const Fp& F, std::vector<std::uint64_t>& m, int dim);

// Determinant of the Sylvester matrix of a and b taken at *nominal* degrees
// (na, nb) >= the actual degrees.  When a lead vanishes the value picks up
// the standard correction factors (lc powers and a sign) relative to the
// resultant at the true degrees; when both nominal leads vanish the
// determinant is zero.  Computed by a Euclidean remainder sequence.
std::uint64_t fp_resultant_nominal(const Fp& F, FpPoly a, FpPoly b, long na,
                                   long nb);

// Unique polynomial of degree < nodes.size() through (nodes[i], values[i]).
// Nodes must be pairwise distinct mod p.
FpPoly fp_interpolate(const Fp& F, const std::vector<std::uint64_t>& nodes,
                      const std::vector<std::uint64_t>& values);

// Incremental Chinese remaindering of a fixed-length vector of integers,
// one prime at a time, with symmetric lifts into (-P/2, P/2].  stable()
// reports whether the last add_prime left every lift unchanged -- the
// termination signal once enough primes have been absorbed.
class CrtAccumulator {
public:
  // residues: canonical (non-Montgomery) values mod p.  All calls must pass
  // vectors of the same length; primes must be distinct.
  void add_prime(std::uint64_t p, const std::vector<std::uint64_t>& residues);

  bool stable() const { return stable_; }
  std::size_t primes_used() const { return primes_; }
  const Int& modulus() const { return modulus_; }
  const std::vector<Int>& values() const { return lifted_; }

private:
  Int modulus_ = 1;
  std::vector<Int> residues_; // canonical in [0, modulus_)
  std::vector<Int> lifted_;   // symmetric lifts
  std::size_t primes_ = 0;
  bool stable_ = false;
};

} // namespace vieta
