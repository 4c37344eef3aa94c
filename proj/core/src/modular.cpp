#include "vieta/modular.hpp"

#include <stdexcept>

namespace vieta {

Fp::Fp(std::uint64_t p) : p_(p) {
  if (p < 3 || (p & 1) == 0 || p >= (1ull << 62))
    throw std::invalid_argument("Fp: need an odd prime below 2^62");
  // p^-1 mod 2^64 by Newton's iteration, then negate for REDC.
  std::uint64_t inv = p;
  for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
  ninv_ = ~inv + 1;
  // R^2 mod p with R = 2^64, via GMP (one-off per prime).
  Int r2 = (Int(1) << 64) % Int((unsigned long)p);
  r2 = (r2 * r2) % Int((unsigned long)p);
  r2_ = r2.get_ui();
  one_ = to(1);
}

std::uint64_t Fp::to(std::uint64_t x) const {
  return redc(static_cast<unsigned __int128>(x) * r2_);
}

std::uint64_t Fp::from(std::uint64_t a) const {
  return redc(static_cast<unsigned __int128>(a));
}

std::uint64_t Fp::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t acc = one_;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

std::uint64_t Fp::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("Fp: inverse of zero");
  return pow(a, p_ - 2);
}

std::uint64_t Fp::reduce(const Int& z) const {
  unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), (unsigned long)p_);
  return to(r);
}

std::uint64_t Fp::reduce(const Rational& q) const {
  std::uint64_t den = reduce(q.denominator());
  if (den == 0)
    throw std::domain_error("Fp: denominator vanishes mod p");
  return mul(reduce(q.numerator()), inv(den));
}

std::uint64_t PrimeSource::next() {
  mpz_nextprime(cursor_.get_mpz_t(), cursor_.get_mpz_t());
  if (cursor_ >= (Int(1) << 62))
    throw std::runtime_error("PrimeSource: exhausted the 62-bit range");
  return cursor_.get_ui();
}

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long fp_degree(const FpPoly& a) { return long(a.size()) - 1; }

std::uint64_t fp_eval(const Fp& F, const FpPoly& a, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

std::uint64_t fp_det(const Fp& F, std::vector<std::uint64_t>& m, int dim) {
  std::uint64_t det = F.one();
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int r = col; r < dim; ++r)
      if (m[std::size_t(r) * dim + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = col; c < dim; ++c)
        std::swap(m[std::size_t(pivot) * dim + c],
                  m[std::size_t(col) * dim + c]);
      det = F.neg(det);
    }
    const std::uint64_t piv = m[std::size_t(col) * dim + col];
    det = F.mul(det, piv);
    const std::uint64_t pinv = F.inv(piv);
    for (int r = col + 1; r < dim; ++r) {
      const std::uint64_t f = m[std::size_t(r) * dim + col];
      if (f == 0) continue;
      const std::uint64_t scale = F.mul(f, pinv);
      for (int c = col; c < dim; ++c)
        m[std::size_t(r) * dim + c] =
            F.sub(m[std::size_t(r) * dim + c],
                  F.mul(scale, m[std::size_t(col) * dim + c]));
    }
  }
  return det;
}

namespace {

// Resultant at the true degrees of a and b via the classic Euclidean
// recurrence; deg a, deg b >= 0.
std::uint64_t fp_resultant_true(const Fp& F, FpPoly a, FpPoly b) {
  std::uint64_t acc = F.one();
  if (fp_degree(a) < fp_degree(b)) {
    if ((fp_degree(a) & 1) && (fp_degree(b) & 1)) acc = F.neg(acc);
    std::swap(a, b);
  }
  while (true) {
    const long da = fp_degree(a), db = fp_degree(b);
    if (db == 0) return F.mul(acc, F.pow(b[0], std::uint64_t(da)));
    // a mod b, in place
    const std::uint64_t lb_inv = F.inv(b.back());
    for (long k = da; k >= db; --k) {
      const std::uint64_t q = F.mul(a[std::size_t(k)], lb_inv);
      if (q == 0) continue;
      for (long j = 0; j <= db; ++j)
        a[std::size_t(k - db + j)] =
            F.sub(a[std::size_t(k - db + j)], F.mul(q, b[std::size_t(j)]));
    }
    fp_trim(a);
    const long dr = fp_degree(a);
    if (dr < 0) return 0; // common factor
    acc = F.mul(acc, F.pow(b.back(), std::uint64_t(da - dr)));
    if ((da & 1) && (db & 1)) acc = F.neg(acc);
    std::swap(a, b);
  }
}

} // namespace

std::uint64_t fp_resultant_nominal(const Fp& F, FpPoly a, FpPoly b, long na,
                                   long nb) {
  fp_trim(a);
  fp_trim(b);
  long da = fp_degree(a), db = fp_degree(b);
  if (da > na || db > nb)
    throw std::invalid_argument("fp_resultant_nominal: degree above nominal");
  if (na == 0 && nb == 0) return F.one(); // empty Sylvester matrix
  // Both leads deficient: the top Sylvester column is identically zero.
  if (da < na && db < nb) return 0;
  std::uint64_t acc = F.one();
  if (db < nb) {
    // B deficient by nb-db, A full: factor lc(A)^(nb-db).
    if (db < 0) {
      // b == 0: resultant is zero unless nb == 0, handled above.
      return 0;
    }
    acc = F.pow(a.back(), std::uint64_t(nb - db));
  } else if (da < na) {
    // A deficient, B full: sign (-1)^(nb*(na-da)) and factor lc(B)^(na-da).
    if (da < 0) return 0;
    acc = F.pow(b.back(), std::uint64_t(na - da));
    if ((nb & 1) && ((na - da) & 1)) acc = F.neg(acc);
  }
  // Degenerate univariate cases at the true degrees.
  if (da == 0 && db == 0) return acc; // Res of two constants (true deg 0,0) = 1
  if (da == 0) return F.mul(acc, F.pow(a[0], std::uint64_t(db)));
  if (db == 0) return F.mul(acc, F.pow(b[0], std::uint64_t(da)));
  return F.mul(acc, fp_resultant_true(F, std::move(a), std::move(b)));
}

FpPoly fp_interpolate(const Fp& F, const std::vector<std::uint64_t>& nodes,
                      const std::vector<std::uint64_t>& values) {
  const std::size_t n = nodes.size();
  if (values.size() != n)
    throw std::invalid_argument("fp_interpolate: size mismatch");
  if (n == 0) return {};
  // Newton divided differences.
  std::vector<std::uint64_t> dd(values);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      const std::uint64_t num = F.sub(dd[i], dd[i - 1]);
      const std::uint64_t den = F.sub(nodes[i], nodes[i - level]);
      dd[i] = F.mul(num, F.inv(den));
      if (i == level) break;
    }
  // Horner assembly: p = dd[n-1]; p = p*(x - node[i]) + dd[i].
  FpPoly p{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    p.insert(p.begin(), 0);
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
      p[j] = F.sub(p[j], F.mul(nodes[i], p[j + 1]));
    p[0] = F.add(p[0], dd[i]);
  }
  fp_trim(p);
  return p;
}

void CrtAccumulator::add_prime(std::uint64_t p,
                               const std::vector<std::uint64_t>& residues) {
  const Int P((unsigned long)p);
  if (primes_ == 0) {
    residues_.assign(residues.size(), Int(0));
    lifted_.assign(residues.size(), Int(0));
  } else if (residues.size() != residues_.size()) {
    throw std::invalid_argument("CrtAccumulator: length changed");
  }
  const Int mod_inv = [&] {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), modulus_.get_mpz_t(), P.get_mpz_t()) == 0)
      throw std::invalid_argument("CrtAccumulator: repeated prime");
    return inv;
  }();
  const Int new_modulus = modulus_ * P;
  const Int half = new_modulus / 2;
  bool stable = true;
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    // x' = x + modulus * ((r - x) * modulus^-1 mod p)
    Int delta = (Int((unsigned long)residues[i]) - residues_[i]) * mod_inv;
    Int k = delta % P;
    if (k < 0) k += P;
    residues_[i] += modulus_ * k;
    Int lift = residues_[i] > half ? residues_[i] - new_modulus : residues_[i];
    if (lift != lifted_[i]) {
      lifted_[i] = lift;
      stable = false;
    }
  }
  modulus_ = new_modulus;
  ++primes_;
  stable_ = stable && primes_ > 1;
}

} // namespace vieta
