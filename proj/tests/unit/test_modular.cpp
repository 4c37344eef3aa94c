#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "support/testutil.hpp"
#include "vieta/modular.hpp"
#include "vieta/multipoly.hpp"
#include "vieta/resultant.hpp"

using vieta::CrtAccumulator;
using vieta::Fp;
using vieta::FpPoly;
using vieta::Int;
using vieta::MultiPoly;
using vieta::PrimeSource;
using vieta::Rational;
using vieta::Var;

namespace {

// Naive mulmod through __int128 -- the oracle for Montgomery.
std::uint64_t naive_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return std::uint64_t((unsigned __int128)(a) * b % p);
}

} // namespace

TEST_CASE("Montgomery multiplication agrees with __int128 reduction") {
  PrimeSource ps;
  const std::uint64_t p = ps.next();
  Fp F(p);
  auto g = testutil::rng(21);
  std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t a = d(g), b = d(g);
    std::uint64_t got = F.from(F.mul(F.to(a), F.to(b)));
    CHECK(got == naive_mulmod(a, b, p));
  }
  // to/from round-trip and the ring constants
  CHECK(F.from(F.to(12345)) == 12345);
  CHECK(F.from(F.one()) == 1);
  CHECK(F.from(F.zero()) == 0);
}

TEST_CASE("Fp pow and inv") {
  Fp F(1000003); // small prime keeps the oracle loop cheap
  auto g = testutil::rng(22);
  std::uniform_int_distribution<std::uint64_t> d(1, 1000002);
  for (int i = 0; i < 50; ++i) {
    std::uint64_t a = d(g);
    std::uint64_t am = F.to(a);
    // Fermat: a^(p-1) = 1
    CHECK(F.from(F.pow(am, 1000002)) == 1);
    CHECK(F.mul(am, F.inv(am)) == F.one());
  }
  // pow by explicit repeated multiplication
  std::uint64_t x = F.to(987654);
  std::uint64_t acc = F.one();
  for (int i = 0; i < 13; ++i) acc = F.mul(acc, x);
  CHECK(F.pow(x, 13) == acc);
  CHECK(F.from(F.pow(x, 0)) == 1);
}

TEST_CASE("reduce maps exact values and flags dead denominators") {
  Fp F(97);
  CHECK(F.from(F.reduce(Int(100))) == 3);
  CHECK(F.from(F.reduce(Int(-1))) == 96);
  // 1/2 mod 97 = 49 since 2*49 = 98 = 1
  CHECK(F.from(F.reduce(Rational(1, 2))) == 49);
  CHECK(F.from(F.reduce(Rational(-3, 2))) == 97 - F.from(F.reduce(Rational(3, 2))));
  CHECK_THROWS_AS((void)F.reduce(Rational(5, 97)), std::domain_error);
}

TEST_CASE("prime source yields distinct 62-bit primes") {
  PrimeSource ps;
  std::uint64_t prev = 0;
  for (int i = 0; i < 5; ++i) {
    std::uint64_t p = ps.next();
    CHECK(p > prev);
    CHECK(p > (std::uint64_t(1) << 61));
    CHECK(p < (std::uint64_t(1) << 62));
    // trial check with a few small factors
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull})
      CHECK(p % q != 0);
    prev = p;
  }
}

TEST_CASE("fp_det matches integer determinants reduced mod p") {
  Fp F(1000003);
  // det [[2,3],[4,5]] = -2;  det of a 3x3 with known value 18
  auto det_of = [&](std::vector<long> entries, int dim) {
    std::vector<std::uint64_t> m;
    for (long e : entries) m.push_back(F.reduce(Int(e)));
    return F.from(fp_det(F, m, dim));
  };
  CHECK(det_of({2, 3, 4, 5}, 2) == 1000003 - 2);
  CHECK(det_of({6, 1, 1, 4, -2, 5, 2, 8, 7}, 3) == (1000003 - 306) % 1000003);
  CHECK(det_of({1, 2, 2, 4}, 2) == 0); // singular
  // row swaps still reached: leading zero forces pivoting
  CHECK(det_of({0, 1, 1, 0}, 2) == 1000003 - 1);
}

TEST_CASE("fp_resultant_nominal at true degrees matches the exact resultant") {
  // Res_x(p, q) for univariate images with rational coefficients, checked
  // against the exact multivariate resultant evaluated the same way.
  auto g = testutil::rng(23);
  PrimeSource ps;
  Fp F(ps.next());
  for (int trial = 0; trial < 10; ++trial) {
    vieta::UPolyQ a = testutil::rand_upoly(g, 4);
    vieta::UPolyQ b = testutil::rand_upoly(g, 3);
    // exact value via the generic machinery (univariate in X)
    MultiPoly am = a.to_multipoly(Var::X), bm = b.to_multipoly(Var::X);
    MultiPoly rm = vieta::resultant(am, bm, Var::X);
    REQUIRE(rm.num_terms() <= 1);
    Rational exact = rm.is_zero() ? Rational(0) : rm.terms().begin()->second;

    FpPoly af, bf;
    for (const auto& c : a.coeffs()) af.push_back(F.reduce(c));
    for (const auto& c : b.coeffs()) bf.push_back(F.reduce(c));
    std::uint64_t got = fp_resultant_nominal(F, af, bf, 4, 3);
    CHECK(F.from(got) == F.from(F.reduce(exact)));
  }
}

TEST_CASE("fp_resultant_nominal handles degree-deficient leads") {
  // Degree deficiency corrections: if deg(a) = da < na while deg(b) = nb,
  // the nominal Sylvester determinant equals lc(b)^(na-da) * Res(a, b), up
  // to the sign from the row permutation.  Cross-check against an explicit
  // Sylvester matrix with zero lead entries fed to fp_det.
  Fp F(1000003);
  auto sylvester_det = [&](const FpPoly& a, const FpPoly& b, long na, long nb) {
    // rows: nb shifted copies of a at nominal degree na, then na copies of b
    long dim = na + nb;
    std::vector<std::uint64_t> m(std::size_t(dim * dim), 0);
    auto at = [&](const FpPoly& p, long k) -> std::uint64_t {
      return (k >= 0 && k < long(p.size())) ? p[std::size_t(k)] : 0;
    };
    for (long r = 0; r < nb; ++r)
      for (long c = 0; c <= na; ++c)
        m[std::size_t(r * dim + r + c)] = at(a, na - c);
    for (long r = 0; r < na; ++r)
      for (long c = 0; c <= nb; ++c)
        m[std::size_t((nb + r) * dim + r + c)] = at(b, nb - c);
    return fp_det(F, m, int(dim));
  };

  auto g = testutil::rng(24);
  std::uniform_int_distribution<std::uint64_t> d(1, 1000002);
  for (int trial = 0; trial < 12; ++trial) {
    long na = 4, nb = 3;
    long da = (trial % 3 == 0) ? 4 : 4 - (trial % 3); // sometimes deficient
    long db = (trial % 4 == 0) ? 3 : 3 - (trial % 4 == 1 ? 0 : 1);
    FpPoly a, b;
    for (long i = 0; i <= da; ++i) a.push_back(F.to(d(g)));
    for (long i = 0; i <= db; ++i) b.push_back(F.to(d(g)));
    std::uint64_t want = sylvester_det(a, b, na, nb);
    std::uint64_t got = fp_resultant_nominal(F, a, b, na, nb);
    CHECK(F.from(got) == F.from(want));
  }

  // both nominal leads dead -> zero
  FpPoly a{F.to(1), F.to(2)};       // degree 1
  FpPoly b{F.to(5), F.to(1)};       // degree 1
  CHECK(fp_resultant_nominal(F, a, b, 2, 2) == 0);
}

TEST_CASE("fp_interpolate round-trips polynomials through evaluations") {
  PrimeSource ps;
  Fp F(ps.next());
  auto g = testutil::rng(25);
  std::uniform_int_distribution<std::uint64_t> d(0, F.modulus() - 1);
  for (int deg = 0; deg <= 6; ++deg) {
    FpPoly p;
    for (int i = 0; i <= deg; ++i) p.push_back(F.to(d(g)));
    if (p.back() == 0) p.back() = F.one();
    std::vector<std::uint64_t> nodes, values;
    for (int i = 0; i <= deg; ++i) {
      nodes.push_back(F.to(std::uint64_t(i + 1)));
      values.push_back(vieta::fp_eval(F, p, nodes.back()));
    }
    FpPoly q = fp_interpolate(F, nodes, values);
    vieta::fp_trim(q);
    CHECK(q == p);
  }
}

TEST_CASE("CRT accumulator recovers signed integers and reports stability") {
  // Pick integers wider than one prime so at least two primes are needed.
  std::vector<Int> truth;
  truth.push_back((Int(1) << 100) + 12345);
  truth.push_back(-((Int(7) << 90) + 1));
  truth.push_back(Int(0));
  truth.push_back(Int(-42));

  PrimeSource ps;
  CrtAccumulator acc;
  int rounds = 0;
  while (rounds < 8) {
    std::uint64_t p = ps.next();
    Fp F(p);
    std::vector<std::uint64_t> res;
    for (const auto& v : truth) res.push_back(F.from(F.reduce(v)));
    acc.add_prime(p, res);
    ++rounds;
    if (acc.stable() && acc.primes_used() >= 2) break;
  }
  REQUIRE(acc.values().size() == truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) CHECK(acc.values()[i] == truth[i]);
  CHECK(acc.stable());
  // one prime cannot be stable yet for the wide values; stability arrived
  // only once the lifts stopped moving
  CHECK(acc.primes_used() >= 3);
}
