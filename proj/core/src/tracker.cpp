#include "vieta/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vieta/errors.hpp"

namespace vieta {

DerivKit::DerivKit(const Eliminant& e) : main_(e.poly.main()) {
  r_ = e.poly.to_multipoly();
  rm_ = r_.derivative(main_);
  rt_ = r_.derivative(Var::T);
  rmm_ = rm_.derivative(main_);
  rmt_ = rm_.derivative(Var::T);
  rtt_ = rt_.derivative(Var::T);
}

namespace {

std::array<Complex, 4> eval_point(Var main, Complex coord, const Rational& t) {
  std::array<Complex, 4> pt{Complex(0), Complex(0), Complex(t.to_double(), 0),
                            Complex(0)};
  pt[static_cast<std::size_t>(main)] = coord;
  return pt;
}

} // namespace

Complex DerivKit::velocity(Complex coord, const Rational& t,
                           const Tolerances& tol) const {
  auto pt = eval_point(main_, coord, t);
  Complex den = rm_.evaluate_complex(pt);
  double scale = 1.0 + rm_.magnitude_at(pt);
  if (std::abs(den) <= tol.eps_deriv * scale)
    throw NearEvent("implicit derivative denominator ~ 0 at t = " + t.str());
  return -rt_.evaluate_complex(pt) / den;
}

Complex DerivKit::acceleration(Complex coord, Complex v, const Rational& t,
                               const Tolerances& tol) const {
  auto pt = eval_point(main_, coord, t);
  Complex den = rm_.evaluate_complex(pt);
  double scale = 1.0 + rm_.magnitude_at(pt);
  if (std::abs(den) <= tol.eps_deriv * scale)
    throw NearEvent("implicit derivative denominator ~ 0 at t = " + t.str());
  Complex num = rmm_.evaluate_complex(pt) * v * v +
                Complex(2.0) * rmt_.evaluate_complex(pt) * v +
                rtt_.evaluate_complex(pt);
  return -num / den;
}

namespace {

Rational rational_near(double v) { return Rational(mpq_class(v)); }

int real_root_count_at(const MultiPoly& elim, Var main, const Rational& t) {
  UPolyQ p = UPolyQ::from_multipoly(elim.substitute(Var::T, t), main);
  if (p.degree() < 1) return 0;
  return SturmChain(p).count_real_roots();
}

double joint_dist(const Complex& x1, const Complex& y1, const Complex& x2,
                  const Complex& y2) {
  return std::abs(x1 - x2) + std::abs(y1 - y2);
}

std::pair<std::size_t, std::size_t> closest_pair(const std::vector<Complex>& v) {
  std::size_t bi = 0, bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      double d = std::abs(v[i] - v[j]);
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  return {bi, bj};
}

} // namespace

std::vector<Event> detect_events(const Eliminants& el, const Rational& t_lo,
                                 const Rational& t_hi, const Tolerances& tol) {
  UPolyQ disc_x = discriminant(el.in_x);
  UPolyQ disc_y = discriminant(el.in_y);
  UPolyQ d = common_factor(disc_x, disc_y);
  std::vector<Event> events;
  if (d.degree() < 1) return events;

  Rational delta = rational_near(tol.delta_event);
  UPolyQ sqf = d.squarefree_part();
  auto ivs = isolate_real_roots(d, std::make_pair(t_lo, t_hi));

  MultiPoly rx = el.in_x.poly.to_multipoly();
  MultiPoly ry = el.in_y.poly.to_multipoly();

  for (std::size_t i = 0; i < ivs.size(); ++i) {
    IsolatingInterval iv = refine_interval(sqf, ivs[i], delta);
    Event ev;
    ev.t_lo = iv.lo;
    ev.t_hi = iv.hi;
    ev.exact = iv.exact;

    // probe points strictly between this root and its neighbours
    Rational gap_l = delta, gap_r = delta;
    if (i > 0) {
      Rational room = (iv.lo - ivs[i - 1].hi) / Rational(3);
      if (room < gap_l) gap_l = room;
    }
    if (i + 1 < ivs.size()) {
      Rational room = (ivs[i + 1].lo - iv.hi) / Rational(3);
      if (room < gap_r) gap_r = room;
    }
    Rational t_l = iv.lo - gap_l;
    Rational t_r = iv.hi + gap_r;
    // a probe landing exactly on another root of D would corrupt the count
    while (sqf.eval(t_l).is_zero()) t_l -= gap_l / Rational(7);
    while (sqf.eval(t_r).is_zero()) t_r += gap_r / Rational(7);

    ev.count_change_x = real_root_count_at(rx, Var::X, t_r) -
                        real_root_count_at(rx, Var::X, t_l);
    ev.count_change_y = real_root_count_at(ry, Var::Y, t_r) -
                        real_root_count_at(ry, Var::Y, t_l);
    int primary = ev.count_change_x != 0 ? ev.count_change_x : ev.count_change_y;
    ev.kind = primary > 0   ? EventKind::Creation
              : primary < 0 ? EventKind::Annihilation
                            : EventKind::Degenerate;

    // location: at the probe on the side where the colliding pair exists as
    // separate roots, the closest pair brackets the collision point
    Rational t_probe = (ev.kind == EventKind::Annihilation) ? t_l : t_r;
    try {
      RootSet xs = solve_roots(el.in_x.poly, t_probe, nullptr, tol);
      RootSet ys = solve_roots(el.in_y.poly, t_probe, nullptr, tol);
      auto [xi, xj] = closest_pair(xs.roots);
      auto [yi, yj] = closest_pair(ys.roots);
      ev.x = 0.5 * (xs.roots[xi].real() + xs.roots[xj].real());
      ev.y = 0.5 * (ys.roots[yi].real() + ys.roots[yj].real());
    } catch (const SolveFailure&) {
      ev.x = ev.y = std::numeric_limits<double>::quiet_NaN();
    } catch (const std::range_error&) {
      ev.x = ev.y = std::numeric_limits<double>::quiet_NaN();
    }
    events.push_back(std::move(ev));
  }
  return events;
}

namespace {

double min_separation(const std::vector<ParticleState>& ps) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      best = std::min(best, joint_dist(ps[i].x, ps[i].y, ps[j].x, ps[j].y));
  return best;
}

struct Continuation {
  std::vector<int> id_of_position; // current positional index -> id
  bool ambiguous = false;
};

// Match previous particles (with their ids) to current positional states by
// predicted position.  Ambiguous when some particle moved a large fraction
// of the minimal current separation -- identity could have been swapped.
Continuation match_identities(const TrajectorySample& prev,
                              const std::vector<ParticleState>& cur,
                              const Rational& t_now) {
  const std::size_t n = cur.size();
  double dt = (t_now - prev.t).to_double();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const ParticleState& p = prev.particles[j];
    Complex px = p.x, py = p.y;
    if (!prev.derivs.empty()) {
      px += prev.derivs[j].vx * dt;
      py += prev.derivs[j].vy * dt;
    }
    for (std::size_t k = 0; k < n; ++k)
      cost[j][k] = joint_dist(px, py, cur[k].x, cur[k].y);
  }
  std::vector<int> match = min_cost_assignment(cost);

  Continuation c;
  c.id_of_position.assign(n, -1);
  double sep = min_separation(cur);
  for (std::size_t j = 0; j < n; ++j) {
    c.id_of_position[match[j]] = prev.particles[j].id;
    if (cost[j][match[j]] > 0.45 * sep) c.ambiguous = true;
  }
  return c;
}

// Applies an id mapping to positional states and returns them ordered by id,
// with partner links remapped.
std::vector<ParticleState> order_by_id(std::vector<ParticleState> cur,
                                       const std::vector<int>& ids) {
  for (std::size_t k = 0; k < cur.size(); ++k) cur[k].id = ids[k];
  std::vector<ParticleState> by_id(cur.size());
  for (auto& p : cur) {
    if (p.partner >= 0) p.partner = ids[p.partner];
    by_id[p.id] = p;
  }
  return by_id;
}

struct Tracker {
  const PolySystem& sys;
  const Eliminants& el;
  const Tolerances& tol;
  RootSet warm_x, warm_y;
  bool have_warm = false;

  struct Solved {
    std::vector<ParticleState> particles; // positional order
    bool assembly_ok = true;
  };

  // Solve both eliminants and assemble; nullopt when root finding itself
  // fails.  On assembly failure falls back to unchecked greedy pairing so
  // the sample still carries positions (flagged by the caller).
  std::optional<Solved> solve_at(const Rational& t) {
    RootSet xs, ys;
    try {
      xs = solve_roots(el.in_x.poly, t, have_warm ? &warm_x : nullptr, tol);
      ys = solve_roots(el.in_y.poly, t, have_warm ? &warm_y : nullptr, tol);
    } catch (const SolveFailure&) {
      return std::nullopt;
    } catch (const std::range_error&) {
      return std::nullopt;
    }
    warm_x = xs;
    warm_y = ys;
    have_warm = true;

    Solved out;
    try {
      RootSet cx = xs, cy = ys;
      classify_real(cx, tol);
      classify_real(cy, tol);
      out.particles = assemble_particles(sys, t, cx, cy, tol);
      return out;
    } catch (const SolveFailure&) {
      // unpaired complex roots; fall through to the unchecked pairing
    } catch (const AssemblyFailure&) {
    }

    out.assembly_ok = false;
    const std::size_t n = xs.roots.size();
    std::vector<ParticleState> ps(n);
    std::vector<char> used(n, 0);
    const double td = t.to_double();
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t bj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        std::array<Complex, 4> pt{xs.roots[i], ys.roots[j], Complex(td, 0),
                                  Complex(0)};
        double r = std::abs(sys.f1.evaluate_complex(pt)) +
                   std::abs(sys.f2.evaluate_complex(pt));
        if (r < best) {
          best = r;
          bj = j;
        }
      }
      used[bj] = 1;
      ps[i].x = xs.roots[i];
      ps[i].y = ys.roots[bj];
      ps[i].residual = best;
      ps[i].kind = (std::abs(ps[i].x.imag()) <= tol.eps_real &&
                    std::abs(ps[i].y.imag()) <= tol.eps_real)
                       ? CoordKind::Real
                       : CoordKind::ComplexPaired;
      ps[i].partner = -1;
    }
    std::sort(ps.begin(), ps.end(),
              [](const ParticleState& a, const ParticleState& b) {
                if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
                if (a.x.imag() != b.x.imag()) return a.x.imag() < b.x.imag();
                if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
                return a.y.imag() < b.y.imag();
              });
    out.particles = std::move(ps);
    return out;
  }

  // Resolve identities across [from.t, t_to] by recursive bisection.  Each
  // level inserts a midpoint solve until every hop is unambiguous.  Returns
  // the sample at t_to (particles in id order, no derivatives) or nullopt
  // if the ambiguity persists within the solve budget.
  std::optional<TrajectorySample> walk(const TrajectorySample& from,
                                       const Rational& t_to, int depth,
                                       int& budget) {
    if (budget <= 0) return std::nullopt;
    --budget;
    auto solved = solve_at(t_to);
    if (!solved || solved->particles.size() != from.particles.size())
      return std::nullopt;
    Continuation c = match_identities(from, solved->particles, t_to);
    if (!c.ambiguous) {
      TrajectorySample s;
      s.t = t_to;
      s.particles = order_by_id(std::move(solved->particles), c.id_of_position);
      return s;
    }
    if (depth <= 0) return std::nullopt;
    Rational mid = (from.t + t_to) / Rational(2);
    auto half = walk(from, mid, depth - 1, budget);
    if (!half) return std::nullopt;
    return walk(*half, t_to, depth - 1, budget);
  }
};

} // namespace

TrackResult track(const PolySystem& sys, const Rational& t_start,
                  const Rational& t_end, long steps, const Tolerances& tol) {
  if (!(t_start < t_end)) throw std::invalid_argument("track: empty range");
  if (steps < 2) throw std::invalid_argument("track: need at least two samples");

  TrackResult out;
  Eliminants el = eliminants(sys);
  out.events = detect_events(el, t_start, t_end, tol);
  DerivKit kx(el.in_x), ky(el.in_y);
  Tracker tracker{sys, el, tol};

  Rational delta = rational_near(tol.delta_event);
  auto near_an_event = [&](const Rational& t) {
    for (const auto& ev : out.events)
      if (t >= ev.t_lo - delta && t <= ev.t_hi + delta) return true;
    return false;
  };

  long prev_good = -1; // index of the last sample that carries particles

  // `steps` samples including both endpoints.
  for (long i = 0; i < steps; ++i) {
    Rational t =
        t_start + (t_end - t_start) * Rational(i) / Rational(steps - 1);
    TrajectorySample smp;
    smp.t = t;
    smp.near_event = near_an_event(t);

    auto solved = tracker.solve_at(t);
    if (!solved) {
      smp.near_event = true;
      out.samples.push_back(std::move(smp));
      continue;
    }
    if (!solved->assembly_ok) smp.near_event = true;
    std::vector<ParticleState> cur = std::move(solved->particles);

    std::vector<int> ids(cur.size());
    bool have_prev =
        prev_good >= 0 &&
        out.samples[prev_good].particles.size() == cur.size();
    if (!have_prev) {
      for (std::size_t k = 0; k < cur.size(); ++k) ids[k] = int(k);
    } else {
      const TrajectorySample& prev = out.samples[prev_good];
      Continuation c = match_identities(prev, cur, t);
      if (c.ambiguous) {
        int budget = 64;
        auto resolved = tracker.walk(prev, t, 12, budget);
        if (resolved) {
          // transfer ids from the resolved sample by nearest position; the
          // re-solve at the same t may differ by rounding noise only
          std::vector<char> taken(cur.size(), 0);
          for (std::size_t k = 0; k < cur.size(); ++k) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t bp = 0;
            for (std::size_t j = 0; j < resolved->particles.size(); ++j) {
              if (taken[j]) continue;
              const auto& p = resolved->particles[j];
              double d = joint_dist(p.x, p.y, cur[k].x, cur[k].y);
              if (d < best) {
                best = d;
                bp = j;
              }
            }
            taken[bp] = 1;
            ids[k] = resolved->particles[bp].id;
          }
        } else {
          ids = c.id_of_position; // optimal assignment, deterministic
          smp.near_event = true;  // persistent ambiguity
        }
      } else {
        ids = c.id_of_position;
      }
    }

    smp.particles = order_by_id(std::move(cur), ids);

    if (!smp.near_event) {
      try {
        smp.derivs.resize(smp.particles.size());
        for (std::size_t k = 0; k < smp.particles.size(); ++k) {
          auto& d = smp.derivs[k];
          d.vx = kx.velocity(smp.particles[k].x, t, tol);
          d.vy = ky.velocity(smp.particles[k].y, t, tol);
          d.ax = kx.acceleration(smp.particles[k].x, d.vx, t, tol);
          d.ay = ky.acceleration(smp.particles[k].y, d.vy, t, tol);
        }
      } catch (const NearEvent&) {
        smp.near_event = true;
        smp.derivs.clear();
      }
    }

    out.samples.push_back(std::move(smp));
    if (!out.samples.back().particles.empty())
      prev_good = long(out.samples.size()) - 1;
  }

  // involved ids: the two particles nearest the collision location on the
  // side of the event where the pair exists as separate real particles
  for (auto& ev : out.events) {
    if (std::isnan(ev.x)) continue;
    const TrajectorySample* side = nullptr;
    if (ev.kind == EventKind::Annihilation) {
      for (const auto& s : out.samples)
        if (!s.near_event && !s.particles.empty() && s.t < ev.t_lo) side = &s;
    } else {
      for (const auto& s : out.samples)
        if (!s.near_event && !s.particles.empty() && s.t > ev.t_hi) {
          side = &s;
          break;
        }
    }
    if (!side || side->particles.size() < 2) continue;
    std::vector<std::pair<double, int>> by_dist;
    for (const auto& p : side->particles)
      by_dist.emplace_back(
          joint_dist(p.x, p.y, Complex(ev.x, 0), Complex(ev.y, 0)), p.id);
    std::sort(by_dist.begin(), by_dist.end());
    ev.involved = {by_dist[0].second, by_dist[1].second};
    std::sort(ev.involved.begin(), ev.involved.end());
  }
  return out;
}

} // namespace vieta
