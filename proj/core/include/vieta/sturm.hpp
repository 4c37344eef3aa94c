#pragma once

#include <optional>
#include <vector>

#include "vieta/upolyq.hpp"

namespace vieta {

// Isolating interval for one real root.  If exact, lo == hi is the root
// itself; otherwise the open interval (lo, hi) contains exactly one root
// and neither endpoint is a root.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  bool exact = false;

  Rational midpoint() const {
    return exact ? lo : (lo + hi) / Rational(2);
  }
  Rational width() const { return hi - lo; }
};

// Sturm chain of a squarefree representative of p.  Provides exact real
// root counts over intervals and the whole line.
class SturmChain {
public:
  explicit SturmChain(const UPolyQ& p);

  const UPolyQ& squarefree() const { return chain_.front(); }

  int variations_at(const Rational& a) const;
  int variations_neg_inf() const;
  int variations_pos_inf() const;

  // Number of distinct real roots in the open interval (a, b).
  // Precondition: neither endpoint is a root.
  int count_roots(const Rational& a, const Rational& b) const;
  int count_real_roots() const;

private:
  std::vector<UPolyQ> chain_;
};

// Isolates all distinct real roots of p (multiplicity is ignored: the
// squarefree part is used).  If a range is given only roots in the closed
// interval [range->first, range->second] are reported.  Results are sorted
// ascending and pairwise disjoint.
std::vector<IsolatingInterval> isolate_real_roots(
    const UPolyQ& p,
    const std::optional<std::pair<Rational, Rational>>& range = std::nullopt);

// Shrinks an isolating interval of the squarefree polynomial s by bisection
// until its width is <= width.  May discover an exact rational root.
IsolatingInterval refine_interval(const UPolyQ& s, IsolatingInterval iv,
                                  const Rational& width);

} // namespace vieta
