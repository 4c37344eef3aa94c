#include "vieta/sturm.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <tuple>

namespace vieta {
namespace {

// Scale to integer-primitive WITHOUT flipping signs (the Sturm chain's sign
// structure is the whole point).
UPolyQ primitive_keep_sign(const UPolyQ& p) {
  if (p.is_zero()) return p;
  UPolyQ r = p;
  r.scale(p.content().inverse()); // content is positive by construction
  return r;
}

int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

UPolyQ deflate_root(const UPolyQ& s, const Rational& r) {
  return s.exact_divide(UPolyQ(std::vector<Rational>{-r, Rational(1)}));
}

} // namespace

SturmChain::SturmChain(const UPolyQ& p) {
  UPolyQ p0 = p.squarefree_part();
  if (p0.is_zero()) throw std::invalid_argument("Sturm chain of zero polynomial");
  chain_.push_back(p0);
  if (p0.degree() == 0) return;
  chain_.push_back(primitive_keep_sign(p0.derivative()));
  while (chain_.back().degree() > 0) {
    UPolyQ r = chain_[chain_.size() - 2].divrem(chain_.back()).second;
    if (r.is_zero()) break; // cannot happen for squarefree input
    chain_.push_back(primitive_keep_sign(-r));
  }
}

int SturmChain::variations_at(const Rational& a) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.eval(a).sign());
  return count_variations(signs);
}

int SturmChain::variations_neg_inf() const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) {
    int s = q.leading().sign();
    if (q.degree() % 2 != 0) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

int SturmChain::variations_pos_inf() const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.leading().sign());
  return count_variations(signs);
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
  if (!(a < b)) throw std::invalid_argument("count_roots: empty interval");
  if (chain_.front().eval(a).is_zero() || chain_.front().eval(b).is_zero())
    throw std::invalid_argument("count_roots: endpoint is a root");
  return variations_at(a) - variations_at(b);
}

int SturmChain::count_real_roots() const {
  return variations_neg_inf() - variations_pos_inf();
}

std::vector<IsolatingInterval> isolate_real_roots(
    const UPolyQ& p, const std::optional<std::pair<Rational, Rational>>& range) {
  std::vector<IsolatingInterval> result;
  UPolyQ s = p.squarefree_part();

  // Exact rational roots discovered at bisection points (or range endpoints)
  // are deflated out and isolation restarts on the quotient; squarefree
  // input makes each deflation a single clean division.
  bool again = true;
  while (again && s.degree() >= 1) {
    again = false;

    // Cauchy bound: all roots lie strictly inside |u| < 1 + max|c_i|/|c_n|
    Rational bound(1);
    for (long k = 0; k < s.degree(); ++k) {
      Rational q = (s.coeff(k) / s.leading()).abs();
      if (q > bound) bound = q;
    }
    bound += Rational(1);

    Rational lo = -bound, hi = bound;
    if (range) {
      if (range->first > lo) lo = range->first;
      if (range->second < hi) hi = range->second;
    }
    if (lo > hi) break;

    // endpoints must not be roots for the variation bookkeeping; a root at
    // an endpoint of the requested closed range is reported exactly
    std::optional<Rational> hit;
    if (s.eval(lo).is_zero())
      hit = lo;
    else if (lo != hi && s.eval(hi).is_zero())
      hit = hi;

    if (!hit && lo < hi) {
      SturmChain chain(s);
      std::deque<std::tuple<Rational, Rational, int, int>> work;
      work.emplace_back(lo, hi, chain.variations_at(lo), chain.variations_at(hi));
      std::vector<IsolatingInterval> found;
      while (!work.empty() && !hit) {
        auto [a, b, va, vb] = work.front();
        work.pop_front();
        int n = va - vb;
        if (n <= 0) continue;
        if (n == 1) {
          found.push_back({a, b, false});
          continue;
        }
        Rational mid = (a + b) / Rational(2);
        if (s.eval(mid).is_zero()) {
          hit = mid;
          break;
        }
        int vm = chain.variations_at(mid);
        work.emplace_back(a, mid, va, vm);
        work.emplace_back(mid, b, vm, vb);
      }
      if (!hit)
        for (auto& iv : found) result.push_back(iv);
    }

    if (hit) {
      result.push_back({*hit, *hit, true});
      s = deflate_root(s, *hit);
      again = true; // rebuild the chain on the quotient and redo
    }
  }

  std::sort(result.begin(), result.end(),
            [](const IsolatingInterval& a, const IsolatingInterval& b) {
              return a.midpoint() < b.midpoint();
            });
  return result;
}

IsolatingInterval refine_interval(const UPolyQ& s, IsolatingInterval iv,
                                  const Rational& width) {
  if (iv.exact) return iv;
  int sign_lo = s.eval(iv.lo).sign();
  while (iv.width() > width) {
    Rational mid = (iv.lo + iv.hi) / Rational(2);
    int sign_mid = s.eval(mid).sign();
    if (sign_mid == 0) return {mid, mid, true};
    if (sign_mid != sign_lo) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
      sign_lo = sign_mid;
    }
  }
  return iv;
}

} // namespace vieta
