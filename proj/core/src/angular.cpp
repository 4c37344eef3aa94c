#include "vieta/angular.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vieta/assemble.hpp"
#include "vieta/errors.hpp"
#include "vieta/modular.hpp"
#include "vieta/rootsolver.hpp"
#include "vieta/sturm.hpp"

namespace vieta {

MultiPoly angular_constraint(const Eliminants& el) {
  // in_x.poly is the eliminant whose roots are x-coordinates (y was
  // eliminated); its implicit derivative gives v_x.  Vice versa for in_y.
  const MultiPoly ry = el.in_x.poly.to_multipoly(); // R(x, t)
  const MultiPoly rx = el.in_y.poly.to_multipoly(); // R(y, t)
  const MultiPoly ry_x = ry.derivative(Var::X);
  const MultiPoly ry_t = ry.derivative(Var::T);
  const MultiPoly rx_y = rx.derivative(Var::Y);
  const MultiPoly rx_t = rx.derivative(Var::T);
  const MultiPoly m = MultiPoly::variable(Var::M);
  const MultiPoly x = MultiPoly::variable(Var::X);
  const MultiPoly y = MultiPoly::variable(Var::Y);
  return m * rx_y * ry_x + x * rx_t * ry_x - y * ry_t * rx_y;
}

namespace {

// ---------------------------------------------------------------------------
// Modular elimination: E(M, t) = Res_y(Res_x(Phi, F1), Res_x(Phi, F2))
// evaluated on integer grids modulo 62-bit primes and reassembled by CRT.
// ---------------------------------------------------------------------------

struct ModTerm {
  std::uint64_t c; // Montgomery form
  std::uint32_t ex, ey, et;
};

std::vector<ModTerm> reduce_terms(const Fp& F, const MultiPoly& p) {
  std::vector<ModTerm> out;
  out.reserve(p.num_terms());
  for (const auto& [mo, c] : p.terms()) {
    const std::uint64_t cr = F.reduce(c);
    if (cr != 0) out.push_back({cr, mo[Var::X], mo[Var::Y], mo[Var::T]});
  }
  return out;
}

void power_table(const Fp& F, std::uint64_t x, long maxe,
                 std::vector<std::uint64_t>& out) {
  out.resize(std::size_t(maxe) + 1);
  out[0] = F.one();
  for (long k = 1; k <= maxe; ++k) out[std::size_t(k)] = F.mul(out[k - 1], x);
}

// Accumulate p(x, y0, t0) into `out` (indexed by x-power, pre-zeroed).
void specialize_x(const Fp& F, const std::vector<ModTerm>& terms,
                  const std::vector<std::uint64_t>& ypow,
                  const std::vector<std::uint64_t>& tpow,
                  std::vector<std::uint64_t>& out) {
  for (const auto& tm : terms)
    out[tm.ex] =
        F.add(out[tm.ex], F.mul(tm.c, F.mul(ypow[tm.ey], tpow[tm.et])));
}

class ModularEliminator {
public:
  ModularEliminator(const MultiPoly& phi, const MultiPoly& f1,
                    const MultiPoly& f2)
      : phi_a_(phi.coefficient_of(Var::M, 1)),
        phi_b_(phi.coefficient_of(Var::M, 0)),
        f1_(f1),
        f2_(f2) {
    dpx_ = phi.degree(Var::X);
    df1x_ = std::max<long>(f1.degree(Var::X), 0);
    df2x_ = std::max<long>(f2.degree(Var::X), 0);
    if (dpx_ < 1)
      throw PipelineFailure(
          "angular constraint does not involve x; cannot eliminate");
    const long dgy_phi = std::max<long>(phi.degree(Var::Y), 0);
    const long dgy_f1 = std::max<long>(f1.degree(Var::Y), 0);
    const long dgy_f2 = std::max<long>(f2.degree(Var::Y), 0);
    const long dgt_phi = std::max<long>(phi.degree(Var::T), 0);
    const long dgt_f1 = std::max<long>(f1.degree(Var::T), 0);
    const long dgt_f2 = std::max<long>(f2.degree(Var::T), 0);
    // Degree bounds for P_i = Res_x(Phi, F_i) from the Sylvester structure.
    ny_bound_1_ = df1x_ * dgy_phi + dpx_ * dgy_f1;
    ny_bound_2_ = df2x_ * dgy_phi + dpx_ * dgy_f2;
    mdeg1_ = df1x_; // Phi is linear in M
    mdeg2_ = df2x_;
    tdeg1_ = df1x_ * dgt_phi + dpx_ * dgt_f1;
    tdeg2_ = df2x_ * dgt_phi + dpx_ * dgt_f2;
    ny_ = std::max(ny_bound_1_, ny_bound_2_) + 1;
    max_ey_ = 0;
    max_et_ = 0;
    for (const auto* p : {&phi_a_, &phi_b_, &f1_, &f2_}) {
      max_ey_ = std::max(max_ey_, p->degree(Var::Y));
      max_et_ = std::max(max_et_, p->degree(Var::T));
    }
  }

  long dm_bound(long d1, long d2) const { return d2 * mdeg1_ + d1 * mdeg2_; }
  long dt_bound(long d1, long d2) const { return d2 * tdeg1_ + d1 * tdeg2_; }
  long ny() const { return ny_; }

  struct Ctx {
    Fp F;
    std::vector<ModTerm> a, b, g1, g2;
    explicit Ctx(std::uint64_t p) : F(p) {}
  };

  // Throws std::domain_error when a coefficient denominator dies mod p.
  Ctx context(std::uint64_t p) const {
    Ctx c(p);
    c.a = reduce_terms(c.F, phi_a_);
    c.b = reduce_terms(c.F, phi_b_);
    c.g1 = reduce_terms(c.F, f1_);
    c.g2 = reduce_terms(c.F, f2_);
    return c;
  }

  // For fixed t (canonical value), compute per y-node the two inner
  // resultants as (small) polynomials in M: cub1[y] has degree <= df1x,
  // cub2[y] degree <= df2x.
  void dets_at_t(const Ctx& c, std::uint64_t t_can, std::vector<FpPoly>& cub1,
                 std::vector<FpPoly>& cub2) const {
    const Fp& F = c.F;
    cub1.assign(std::size_t(ny_), {});
    cub2.assign(std::size_t(ny_), {});
    std::vector<std::uint64_t> tpow, ypow;
    power_table(F, F.to(t_can), max_et_, tpow);
    std::vector<std::uint64_t> xa(std::size_t(dpx_) + 1);
    std::vector<std::uint64_t> xb(std::size_t(dpx_) + 1);
    std::vector<std::uint64_t> x1(std::size_t(df1x_) + 1);
    std::vector<std::uint64_t> x2(std::size_t(df2x_) + 1);
    for (long yi = 0; yi < ny_; ++yi) {
      power_table(F, F.to(std::uint64_t(yi)), max_ey_, ypow);
      std::fill(xa.begin(), xa.end(), 0);
      std::fill(xb.begin(), xb.end(), 0);
      std::fill(x1.begin(), x1.end(), 0);
      std::fill(x2.begin(), x2.end(), 0);
      specialize_x(F, c.a, ypow, tpow, xa);
      specialize_x(F, c.b, ypow, tpow, xb);
      specialize_x(F, c.g1, ypow, tpow, x1);
      specialize_x(F, c.g2, ypow, tpow, x2);
      cub1[std::size_t(yi)] = det_poly_in_m(F, xa, xb, x1, df1x_);
      cub2[std::size_t(yi)] = det_poly_in_m(F, xa, xb, x2, df2x_);
    }
  }

  // E(m, t) for one grid point, given the det tables for its t.
  std::uint64_t value(const Ctx& c, const std::vector<FpPoly>& cub1,
                      const std::vector<FpPoly>& cub2, std::uint64_t m_can,
                      long d1, long d2) const {
    const Fp& F = c.F;
    const std::uint64_t m0 = F.to(m_can);
    const auto n = static_cast<std::size_t>(ny_);
    std::vector<std::uint64_t> nodes(n), v1(n), v2(n);
    for (std::size_t yi = 0; yi < n; ++yi) {
      nodes[yi] = F.to(yi);
      v1[yi] = fp_eval(F, cub1[yi], m0);
      v2[yi] = fp_eval(F, cub2[yi], m0);
    }
    FpPoly p1 = fp_interpolate(F, nodes, v1);
    FpPoly p2 = fp_interpolate(F, nodes, v2);
    if (fp_degree(p1) > d1 || fp_degree(p2) > d2)
      throw PipelineFailure("inner resultant exceeds its discovered degree");
    return fp_resultant_nominal(F, std::move(p1), std::move(p2), d1, d2);
  }

  // Actual y-degrees of the inner resultants at one probe point.
  std::pair<long, long> probe_degrees(const Ctx& c, std::uint64_t m_can,
                                      std::uint64_t t_can) const {
    std::vector<FpPoly> cub1, cub2;
    dets_at_t(c, t_can, cub1, cub2);
    const Fp& F = c.F;
    const std::uint64_t m0 = F.to(m_can);
    const auto n = static_cast<std::size_t>(ny_);
    std::vector<std::uint64_t> nodes(n), v1(n), v2(n);
    for (std::size_t yi = 0; yi < n; ++yi) {
      nodes[yi] = F.to(yi);
      v1[yi] = fp_eval(F, cub1[yi], m0);
      v2[yi] = fp_eval(F, cub2[yi], m0);
    }
    return {fp_degree(fp_interpolate(F, nodes, v1)),
            fp_degree(fp_interpolate(F, nodes, v2))};
  }

private:
  // det of the Sylvester matrix of (phi = M*a + b, f) in x, as a polynomial
  // in M of degree <= dfx, found by evaluating at dfx+1 values of M.
  static FpPoly det_poly_in_m(const Fp& F, const std::vector<std::uint64_t>& a,
                              const std::vector<std::uint64_t>& b,
                              const std::vector<std::uint64_t>& f, long dfx) {
    const long dpx = long(a.size()) - 1;
    if (dfx == 0) {
      // Res_x(phi, const) = const^{deg_x phi}; no M dependence.
      return FpPoly{F.pow(f[0], std::uint64_t(dpx))};
    }
    const int dim = int(dpx + dfx);
    std::vector<std::uint64_t> nodes(std::size_t(dfx) + 1),
        vals(std::size_t(dfx) + 1);
    std::vector<std::uint64_t> mat;
    std::vector<std::uint64_t> pc(std::size_t(dpx) + 1);
    for (long k = 0; k <= dfx; ++k) {
      const std::uint64_t mk = F.to(std::uint64_t(k));
      nodes[std::size_t(k)] = mk;
      for (long i = 0; i <= dpx; ++i)
        pc[std::size_t(i)] =
            F.add(b[std::size_t(i)], F.mul(mk, a[std::size_t(i)]));
      mat.assign(std::size_t(dim) * dim, 0);
      for (long r = 0; r < dfx; ++r)
        for (long j = 0; j <= dpx; ++j)
          mat[std::size_t(r) * dim + std::size_t(r + j)] =
              pc[std::size_t(dpx - j)];
      for (long r = 0; r < dpx; ++r)
        for (long j = 0; j <= dfx; ++j)
          mat[std::size_t(dfx + r) * dim + std::size_t(r + j)] =
              f[std::size_t(dfx - j)];
      vals[std::size_t(k)] = fp_det(F, mat, dim);
    }
    return fp_interpolate(F, nodes, vals);
  }

  MultiPoly phi_a_, phi_b_, f1_, f2_;
  long dpx_ = 0, df1x_ = 0, df2x_ = 0;
  long ny_bound_1_ = 0, ny_bound_2_ = 0, ny_ = 0;
  long mdeg1_ = 0, mdeg2_ = 0, tdeg1_ = 0, tdeg2_ = 0;
  long max_ey_ = 0, max_et_ = 0;
};

// Deterministic probe values, well inside every 62-bit field.
class ProbeSource {
public:
  std::uint64_t next() { return rng_() % ((1ull << 52) - 5) + 2; }

private:
  std::mt19937_64 rng_{0x76696574615f4d7aULL};
};

struct GridShape {
  long d1 = 0, d2 = 0; // y-degrees of the inner resultants
  long dm = 0, dt = 0; // degrees of E in M and t
};

GridShape discover_shape(const ModularEliminator& elim,
                         const ModularEliminator::Ctx& c, ProbeSource& probe) {
  GridShape s;
  s.d1 = -1;
  s.d2 = -1;
  for (int k = 0; k < 4; ++k) {
    auto [a, b] = elim.probe_degrees(c, probe.next(), probe.next());
    s.d1 = std::max(s.d1, a);
    s.d2 = std::max(s.d2, b);
  }
  if (s.d1 < 0 || s.d2 < 0)
    throw PipelineFailure("an inner resultant vanishes identically");
  const long dm_b = elim.dm_bound(s.d1, s.d2);
  const long dt_b = elim.dt_bound(s.d1, s.d2);
  if (dt_b > 20000 || dm_b > 4000)
    throw PipelineFailure("elimination degree bounds are out of reach: M " +
                          std::to_string(dm_b) + ", t " + std::to_string(dt_b));
  const Fp& F = c.F;
  std::vector<FpPoly> cub1, cub2;
  // Degree in M from slices at random t.
  s.dm = -1;
  for (int rep = 0; rep < 2; ++rep) {
    const std::uint64_t t_can = probe.next() % c.F.modulus();
    elim.dets_at_t(c, t_can, cub1, cub2);
    std::vector<std::uint64_t> nodes(std::size_t(dm_b) + 1),
        vals(std::size_t(dm_b) + 1);
    for (long m = 0; m <= dm_b; ++m) {
      nodes[std::size_t(m)] = F.to(std::uint64_t(m));
      vals[std::size_t(m)] =
          elim.value(c, cub1, cub2, std::uint64_t(m), s.d1, s.d2);
    }
    s.dm = std::max(s.dm, fp_degree(fp_interpolate(F, nodes, vals)));
  }
  // Degree in t from slices at random M.
  s.dt = -1;
  for (int rep = 0; rep < 2; ++rep) {
    const std::uint64_t m_can = probe.next();
    std::vector<std::uint64_t> nodes(std::size_t(dt_b) + 1),
        vals(std::size_t(dt_b) + 1);
    for (long t = 0; t <= dt_b; ++t) {
      nodes[std::size_t(t)] = F.to(std::uint64_t(t));
      elim.dets_at_t(c, std::uint64_t(t), cub1, cub2);
      vals[std::size_t(t)] = elim.value(c, cub1, cub2, m_can, s.d1, s.d2);
    }
    s.dt = std::max(s.dt, fp_degree(fp_interpolate(F, nodes, vals)));
  }
  if (s.dm < 1)
    throw PipelineFailure(
        "eliminated polynomial has no momentum dependence (degree " +
        std::to_string(s.dm) + ")");
  s.dt = std::max(s.dt, 0L);
  return s;
}

// One prime's worth of grid residues for E on {0..dm} x {0..dt}, reshaped
// into coefficient residues (canonical form), row-major by M power.
std::vector<std::uint64_t> grid_residues(const ModularEliminator& elim,
                                         const ModularEliminator::Ctx& c,
                                         const GridShape& s) {
  const Fp& F = c.F;
  const std::size_t nm = std::size_t(s.dm) + 1, nt = std::size_t(s.dt) + 1;
  std::vector<std::uint64_t> vals(nm * nt);
  std::vector<FpPoly> cub1, cub2;
  for (long tj = 0; tj < long(nt); ++tj) {
    elim.dets_at_t(c, std::uint64_t(tj), cub1, cub2);
    for (long mi = 0; mi < long(nm); ++mi)
      vals[std::size_t(mi) * nt + std::size_t(tj)] =
          elim.value(c, cub1, cub2, std::uint64_t(mi), s.d1, s.d2);
  }
  std::vector<std::uint64_t> mnodes(nm), tnodes(nt);
  for (std::size_t i = 0; i < nm; ++i) mnodes[i] = F.to(std::uint64_t(i));
  for (std::size_t j = 0; j < nt; ++j) tnodes[j] = F.to(std::uint64_t(j));
  // Interpolate along M for each t-node...
  std::vector<std::uint64_t> coef_mt(nm * nt, 0);
  std::vector<std::uint64_t> column(nm);
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i = 0; i < nm; ++i) column[i] = vals[i * nt + j];
    FpPoly cm = fp_interpolate(F, mnodes, column);
    for (std::size_t i = 0; i < cm.size(); ++i) coef_mt[i * nt + j] = cm[i];
  }
  // ...then along t for each M power.
  std::vector<std::uint64_t> residues(nm * nt, 0);
  std::vector<std::uint64_t> row(nt);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nt; ++j) row[j] = coef_mt[i * nt + j];
    FpPoly ct = fp_interpolate(F, tnodes, row);
    for (std::size_t j = 0; j < ct.size(); ++j)
      residues[i * nt + j] = F.from(ct[j]);
  }
  return residues;
}

MultiPoly eliminate_modular(const MultiPoly& phi, const MultiPoly& f1,
                            const MultiPoly& f2,
                            const AngularExactOptions& opt,
                            std::size_t& primes_used) {
  ModularEliminator elim(phi, f1, f2);
  PrimeSource primes;
  ProbeSource probe;

  // Shape discovery on the first usable prime.
  std::optional<ModularEliminator::Ctx> first;
  GridShape shape;
  for (int attempts = 0; attempts < 8 && !first; ++attempts) {
    const std::uint64_t p = primes.next();
    try {
      auto ctx = elim.context(p);
      shape = discover_shape(elim, ctx, probe);
      first.emplace(std::move(ctx));
    } catch (const std::domain_error&) {
      // a denominator died mod p; next prime
    }
  }
  if (!first) throw PipelineFailure("no usable prime for elimination");

  CrtAccumulator crt;
  crt.add_prime(first->F.modulus(), grid_residues(elim, *first, shape));
  int streak = 0;
  int used = 1;
  while (streak < opt.stable_streak) {
    if (used >= opt.max_primes)
      throw PipelineFailure(
          "coefficients did not stabilize after " + std::to_string(used) +
          " primes; eliminated polynomial is larger than expected");
    const std::uint64_t p = primes.next();
    try {
      auto ctx = elim.context(p);
      // Guard against primes that collapse the discovered degrees.
      auto [a, b] = elim.probe_degrees(ctx, probe.next(), probe.next());
      if (a != shape.d1 || b != shape.d2) continue;
      crt.add_prime(p, grid_residues(elim, ctx, shape));
      ++used;
      streak = crt.stable() ? streak + 1 : 0;
    } catch (const std::domain_error&) {
      continue;
    }
  }

  // Independent spot check: a fresh prime at a random point must agree
  // with the reconstructed integer coefficients.
  {
    const std::uint64_t q = primes.next();
    auto ctx = elim.context(q);
    const Fp& F = ctx.F;
    const std::uint64_t m_can = probe.next(), t_can = probe.next();
    std::vector<FpPoly> cub1, cub2;
    elim.dets_at_t(ctx, t_can, cub1, cub2);
    const std::uint64_t direct =
        elim.value(ctx, cub1, cub2, m_can, shape.d1, shape.d2);
    const std::size_t nt = std::size_t(shape.dt) + 1;
    const std::uint64_t mm = F.to(m_can % F.modulus());
    const std::uint64_t tt = F.to(t_can % F.modulus());
    std::uint64_t acc = 0;
    std::uint64_t mp = F.one();
    for (long i = 0; i <= shape.dm; ++i) {
      std::uint64_t tp = F.one(), rowacc = 0;
      for (long j = 0; j <= shape.dt; ++j) {
        rowacc = F.add(rowacc,
                       F.mul(F.reduce(crt.values()[std::size_t(i) * nt +
                                                   std::size_t(j)]),
                             tp));
        tp = F.mul(tp, tt);
      }
      acc = F.add(acc, F.mul(rowacc, mp));
      mp = F.mul(mp, mm);
    }
    if (acc != direct)
      throw PipelineFailure(
          "modular reconstruction failed its independent spot check");
  }

  primes_used = crt.primes_used();
  MultiPoly e;
  const std::size_t nt = std::size_t(shape.dt) + 1;
  for (long i = 0; i <= shape.dm; ++i)
    for (long j = 0; j <= shape.dt; ++j) {
      const Int& z = crt.values()[std::size_t(i) * nt + std::size_t(j)];
      if (z == 0) continue;
      e += MultiPoly::variable(Var::M, std::uint32_t(i)) *
           MultiPoly::variable(Var::T, std::uint32_t(j)) *
           MultiPoly(Rational(z));
    }
  if (e.degree(Var::M) != shape.dm)
    throw PipelineFailure("reconstructed polynomial lost its top degree");
  return e;
}

// ---------------------------------------------------------------------------
// Proper-factor reconstruction from high-precision per-particle momenta.
// ---------------------------------------------------------------------------

// Complex arithmetic on GMP floats (precision from mpf_set_default_prec).
struct CxF {
  mpf_class re, im;
};

CxF operator+(const CxF& a, const CxF& b) { return {a.re + b.re, a.im + b.im}; }
CxF operator-(const CxF& a, const CxF& b) { return {a.re - b.re, a.im - b.im}; }
CxF operator-(const CxF& a) { return {-a.re, -a.im}; }
CxF operator*(const CxF& a, const CxF& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CxF operator/(const CxF& a, const CxF& b) {
  mpf_class d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

mpf_class to_mpf(const Rational& q) {
  mpf_class f;
  mpf_set_q(f.get_mpf_t(), q.raw().get_mpq_t());
  return f;
}

// Coefficients of a univariate restriction, exactly evaluated at t.
std::vector<mpf_class> mpf_coeffs(const UniPolyInT& p, const Rational& t) {
  std::vector<mpf_class> out;
  out.reserve(std::size_t(p.degree()) + 1);
  for (long k = 0; k <= p.degree(); ++k)
    out.push_back(to_mpf(p.coeff(std::size_t(k)).eval(t)));
  return out;
}

CxF eval_horner(const std::vector<mpf_class>& c, const CxF& z) {
  CxF acc{mpf_class(0), mpf_class(0)};
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z;
    acc.re += c[i];
  }
  return acc;
}

// A dozen Newton steps: quadratic convergence carries a double seed far
// below the working precision.
CxF refine_root(const std::vector<mpf_class>& c, Complex seed) {
  std::vector<mpf_class> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * (double)k);
  CxF z{mpf_class(seed.real()), mpf_class(seed.imag())};
  for (int it = 0; it < 12; ++it) {
    CxF num = eval_horner(c, z);
    CxF den = eval_horner(dc, z);
    mpf_class mag = den.re * den.re + den.im * den.im;
    if (mag == 0) break;
    z = z - num / den;
  }
  return z;
}

// Best rational approximation by continued fractions, verified to agree
// with the float to within 2^-(bits/2).
Rational rationalize(const mpf_class& x, unsigned long bits) {
  mpq_class exact;
  mpq_set_f(exact.get_mpq_t(), x.get_mpf_t());
  mpq_class target;
  mpq_div_2exp(target.get_mpq_t(), mpq_class(1).get_mpq_t(), bits / 2);
  const Int den_cap = Int(1) << (bits / 4);
  Int hm2(0), hm1(1), km2(1), km1(0);
  mpq_class rem = exact;
  for (int steps = 0; steps < 4096; ++steps) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    Int h = a * hm1 + hm2;
    Int k = a * km1 + km2;
    if (k > den_cap)
      throw PipelineFailure(
          "momentum coefficient does not rationalize within the "
          "denominator bound");
    mpq_class conv(h, k);
    conv.canonicalize();
    mpq_class err = exact - conv;
    if (abs(err) <= target) return Rational(conv);
    hm2 = std::move(hm1);
    hm1 = std::move(h);
    km2 = std::move(km1);
    km1 = std::move(k);
    rem = 1 / (rem - mpq_class(a));
  }
  throw PipelineFailure("continued fraction failed to terminate");
}

// Exact polynomial through (xs[i], ys[i]) by Newton divided differences.
UPolyQ interpolate_exact(const std::vector<Rational>& xs,
                         const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  std::vector<Rational> coeffs{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    coeffs.insert(coeffs.begin(), Rational(0));
    for (std::size_t j = 0; j + 1 < coeffs.size(); ++j)
      coeffs[j] = coeffs[j] - xs[i] * coeffs[j + 1];
    coeffs[0] += dd[i];
  }
  return UPolyQ(std::move(coeffs));
}

// Monic coefficients (ascending in M) of prod (M - m_k), real parts, with a
// residual-imaginary sanity check.
std::vector<mpf_class> monic_from_roots(const std::vector<CxF>& ms,
                                        unsigned long bits) {
  std::vector<CxF> acc{{mpf_class(1), mpf_class(0)}};
  for (const auto& r : ms) {
    std::vector<CxF> next(acc.size() + 1, CxF{mpf_class(0), mpf_class(0)});
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] = next[i + 1] + acc[i];
      next[i] = next[i] - r * acc[i];
    }
    acc = std::move(next);
  }
  mpf_class tol;
  mpf_div_2exp(tol.get_mpf_t(), mpf_class(1).get_mpf_t(), bits / 3);
  std::vector<mpf_class> out;
  out.reserve(acc.size());
  for (auto& c0 : acc) {
    mpf_class scale = abs(c0.re) + 1;
    if (abs(c0.im) > tol * scale)
      throw PipelineFailure(
          "momentum multiset is not conjugate-closed at working precision");
    out.push_back(c0.re);
  }
  return out;
}

struct NodeData {
  Rational t;
  std::vector<Rational> sigma; // ascending M-coefficients, monic tail omitted
};

} // namespace

AngularExactResult angular_momentum_exact(const PolySystem& sys,
                                          const Eliminants& el,
                                          const Tolerances& tol,
                                          const AngularExactOptions& opt) {
  const int N = sys.root_count();
  const MultiPoly phi = angular_constraint(el);

  AngularExactResult res;
  res.eliminated = eliminate_modular(phi, sys.f1, sys.f2, opt, res.primes_used);
  res.deg_m_total = res.eliminated.degree(Var::M);
  if (res.deg_m_total < N)
    throw PipelineFailure("eliminated polynomial has degree " +
                          std::to_string(res.deg_m_total) + " in M, below N = " +
                          std::to_string(N));

  // --- momenta sampling nodes: integers clear of every event ---------------
  const UPolyQ disc_x = discriminant(el.in_x);
  const UPolyQ disc_y = discriminant(el.in_y);
  const UPolyQ dfac = common_factor(disc_x, disc_y);
  std::vector<IsolatingInterval> danger =
      dfac.degree() >= 1 ? isolate_real_roots(dfac)
                         : std::vector<IsolatingInterval>{};
  const Rational margin(1, 4);
  auto clear_of_events = [&](const Rational& c) {
    for (const auto& iv : danger)
      if (c >= iv.lo - margin && c <= iv.hi + margin) return false;
    return true;
  };

  mpf_set_default_prec(opt.mpf_bits);

  // Partial-derivative polynomials for the implicit velocities.
  const MultiPoly ry = el.in_x.poly.to_multipoly();
  const MultiPoly rx = el.in_y.poly.to_multipoly();
  const UniPolyInT ry_x = UniPolyInT::from_multipoly(ry.derivative(Var::X), Var::X);
  const UniPolyInT ry_t = UniPolyInT::from_multipoly(ry.derivative(Var::T), Var::X);
  const UniPolyInT rx_y = UniPolyInT::from_multipoly(rx.derivative(Var::Y), Var::Y);
  const UniPolyInT rx_t = UniPolyInT::from_multipoly(rx.derivative(Var::T), Var::Y);

  const long dt_cap = res.eliminated.degree(Var::T);
  std::vector<NodeData> nodes;
  std::size_t want = 4;
  long candidate = 0;
  auto next_candidate = [&]() {
    // 1, -1, 2, -2, 3, ...
    candidate = candidate > 0 ? -candidate : 1 - candidate;
    return Rational(candidate);
  };

  auto gather_node = [&](const Rational& tj) -> std::optional<NodeData> {
    RootSet xs, ys;
    std::vector<ParticleState> parts;
    try {
      xs = solve_roots(el.in_x.poly, tj, nullptr, tol);
      ys = solve_roots(el.in_y.poly, tj, nullptr, tol);
      classify_real(xs, tol);
      classify_real(ys, tol);
      parts = assemble_particles(sys, tj, xs, ys, tol);
    } catch (const SolveFailure&) {
      return std::nullopt;
    } catch (const AssemblyFailure&) {
      return std::nullopt;
    } catch (const NearEvent&) {
      return std::nullopt;
    }
    if (long(parts.size()) != long(N)) return std::nullopt;
    // refine roots and velocities in high precision
    const auto cx = mpf_coeffs(el.in_x.poly, tj);
    const auto cy = mpf_coeffs(el.in_y.poly, tj);
    const auto dxt = mpf_coeffs(ry_t, tj), dxm = mpf_coeffs(ry_x, tj);
    const auto dyt = mpf_coeffs(rx_t, tj), dym = mpf_coeffs(rx_y, tj);
    std::vector<CxF> momenta;
    momenta.reserve(parts.size());
    for (const auto& p : parts) {
      CxF zx = refine_root(cx, p.x);
      CxF zy = refine_root(cy, p.y);
      CxF denx = eval_horner(dxm, zx);
      CxF deny = eval_horner(dym, zy);
      mpf_class magx = denx.re * denx.re + denx.im * denx.im;
      mpf_class magy = deny.re * deny.re + deny.im * deny.im;
      // derivative denominator too small: effectively at an event, skip node
      if (magx < 1e-18 || magy < 1e-18) return std::nullopt;
      CxF vx = -(eval_horner(dxt, zx) / denx);
      CxF vy = -(eval_horner(dyt, zy) / deny);
      momenta.push_back(zx * vy - zy * vx);
    }
    auto coeffs = monic_from_roots(momenta, opt.mpf_bits);
    // The symmetric functions of the momenta have simple poles at the
    // roots of D(t) (velocities diverge at events), so the polynomial
    // object to interpolate is D(t) times each monic coefficient.
    const mpf_class dj = to_mpf(dfac.eval(tj));
    NodeData nd;
    nd.t = tj;
    nd.sigma.reserve(coeffs.size() - 1);
    for (std::size_t k = 0; k + 1 < coeffs.size(); ++k)
      nd.sigma.push_back(rationalize(coeffs[k] * dj, opt.mpf_bits));
    return nd;
  };

  std::vector<UPolyQ> ghat; // ascending in M, monic over Q
  while (true) {
    while (nodes.size() < want) {
      if (std::abs(candidate) > 4 * opt.max_nodes)
        throw PipelineFailure("could not find enough usable sample times");
      Rational tj = next_candidate();
      if (!clear_of_events(tj)) continue;
      if (auto nd = gather_node(tj)) nodes.push_back(std::move(*nd));
    }
    // Interpolate through all but the last two nodes, verify on those two.
    const std::size_t fit = nodes.size() - 2;
    std::vector<Rational> xs(fit);
    for (std::size_t i = 0; i < fit; ++i) xs[i] = nodes[i].t;
    ghat.assign(std::size_t(N), UPolyQ());
    bool ok = true;
    for (int k = 0; k < N && ok; ++k) {
      std::vector<Rational> ys(fit);
      for (std::size_t i = 0; i < fit; ++i) ys[i] = nodes[i].sigma[std::size_t(k)];
      UPolyQ cand = interpolate_exact(xs, ys);
      for (std::size_t chk = fit; chk < nodes.size() && ok; ++chk)
        ok = cand.eval(nodes[chk].t) == nodes[chk].sigma[std::size_t(k)];
      ghat[std::size_t(k)] = std::move(cand);
    }
    if (ok) break;
    want += 2;
    if (long(want) > dt_cap + 4 || int(want) > opt.max_nodes)
      throw PipelineFailure(
          "monic factor coefficients do not stabilize as polynomials; the "
          "proper factor's leading coefficient is not constant in t");
  }

  // The interpolated coefficients are D(t) * (monic coefficient); where the
  // momenta have no pole the factor of D is surplus and shows up as a common
  // polynomial divisor.  Strip it so the factor is primitive over Q[t].
  UPolyQ lead_t = dfac;
  UPolyQ cont_t = dfac;
  for (const auto& g : ghat)
    if (!g.is_zero()) cont_t = UPolyQ::gcd(cont_t, g);
  if (cont_t.degree() > 0) {
    lead_t = lead_t.exact_divide(cont_t);
    for (auto& g : ghat)
      if (!g.is_zero()) g = g.exact_divide(cont_t);
  }

  // Clear denominators, strip integer content: the primitive proper factor.
  Int lcm_den(1);
  auto fold_dens = [&lcm_den](const UPolyQ& g) {
    for (const auto& c : g.coeffs()) {
      Int den = c.denominator();
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    }
  };
  fold_dens(lead_t);
  for (const auto& g : ghat) fold_dens(g);
  MultiPoly proper = lead_t.to_multipoly(Var::T).scale(Rational(lcm_den)) *
                     MultiPoly::variable(Var::M, std::uint32_t(N));
  for (int k = 0; k < N; ++k)
    proper += ghat[std::size_t(k)].to_multipoly(Var::T).scale(Rational(lcm_den)) *
              MultiPoly::variable(Var::M, std::uint32_t(k));
  const Rational cont = proper.content();
  if (!cont.is_zero()) proper.scale(cont.inverse());
  res.proper = proper;
  res.deg_m_proper = proper.degree(Var::M);

  // The eliminated polynomial must split exactly.
  try {
    res.redundant = res.eliminated.exact_divide(proper);
  } catch (const DivisionFailed&) {
    throw PipelineFailure(
        "reconstructed factor does not divide the eliminated polynomial");
  }
  res.deg_m_redundant = res.redundant.degree(Var::M);

  // M_z = -(coefficient of M^{N-1}) / (coefficient of M^N), time-free.
  // Both coefficients may be genuine polynomials in t (the lead carries the
  // pole-clearing factor); their ratio must still be a constant.
  res.alpha = UPolyQ::from_multipoly(
      proper.coefficient_of(Var::M, std::uint32_t(N)), Var::T);
  res.beta = UPolyQ::from_multipoly(
      proper.coefficient_of(Var::M, std::uint32_t(N - 1)), Var::T);
  if (res.beta.is_zero()) {
    res.mz = Rational(0);
  } else {
    auto [q, r] = res.beta.divrem(res.alpha);
    if (!r.is_zero() || q.degree() != 0)
      throw PipelineFailure("total angular momentum is not time independent");
    res.mz = -q.coeff(0);
  }
  res.lead_ratio =
      res.alpha.coeff(std::size_t(res.alpha.degree())) / el.in_x.lead;
  res.alpha_matches_common_factor = res.alpha.monic() == dfac;
  return res;
}

} // namespace vieta
