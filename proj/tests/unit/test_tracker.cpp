#include <doctest.h>

#include <cmath>

#include "support/testutil.hpp"
#include "vieta/eliminant.hpp"
#include "vieta/errors.hpp"
#include "vieta/parser.hpp"
#include "vieta/system.hpp"
#include "vieta/tracker.hpp"

using vieta::Eliminants;
using vieta::Event;
using vieta::EventKind;
using vieta::Rational;
using vieta::Tolerances;
using vieta::TrackResult;

TEST_CASE("tracking a linear flow gives exact positions and derivatives") {
  auto sys = vieta::load_system(vieta::parse_poly("x - t"),
                                vieta::parse_poly("y - 2*t"));
  TrackResult tr = vieta::track(sys, Rational(-1), Rational(1), 21, Tolerances{});
  REQUIRE(tr.samples.size() == 21);
  CHECK(tr.events.empty());
  for (const auto& s : tr.samples) {
    REQUIRE(s.particles.size() == 1);
    CHECK(!s.near_event);
    const double t = s.t.to_double();
    CHECK(s.particles[0].x.real() == doctest::Approx(t).epsilon(1e-12));
    CHECK(s.particles[0].y.real() == doctest::Approx(2 * t).epsilon(1e-12));
    CHECK(std::abs(s.derivs[0].vx - 1.0) <= 1e-9);
    CHECK(std::abs(s.derivs[0].vy - 2.0) <= 1e-9);
    CHECK(std::abs(s.derivs[0].ax) <= 1e-9);
    CHECK(std::abs(s.derivs[0].ay) <= 1e-9);
  }
  // endpoints hit exactly
  CHECK(tr.samples.front().t == Rational(-1));
  CHECK(tr.samples.back().t == Rational(1));
}

TEST_CASE("quadratic flow: velocity and acceleration via implicit derivatives") {
  // x = t^2 + 1, y = t^3 - t  =>  vx = 2t, ax = 2, vy = 3t^2 - 1, ay = 6t
  auto sys = vieta::load_system(vieta::parse_poly("x - t^2 - 1"),
                                vieta::parse_poly("y - t^3 + t"));
  TrackResult tr = vieta::track(sys, Rational(-2), Rational(2), 17, Tolerances{});
  for (const auto& s : tr.samples) {
    const double t = s.t.to_double();
    const double scale = 1.0 + std::abs(t) * 6;
    CHECK(std::abs(s.derivs[0].vx - 2 * t) <= 1e-8 * scale);
    CHECK(std::abs(s.derivs[0].ax - 2.0) <= 1e-8 * scale);
    CHECK(std::abs(s.derivs[0].vy - (3 * t * t - 1)) <= 1e-8 * scale);
    CHECK(std::abs(s.derivs[0].ay - 6 * t) <= 1e-8 * scale);
  }
}

TEST_CASE("implicit derivatives agree with finite differences at order h^2") {
  auto sys = vieta::load_system(
      vieta::parse_poly("-2*x^3 + y^3 + t*x + t*y + y + 2"),
      vieta::parse_poly("-x^3 - 2*x^2*y + t + 3"));
  Tolerances tol;

  // Central differences of tracked positions vs reported velocities.  All
  // three sample times come from one track call, which is what keeps the
  // particle indices aligned (ids are persistent only within a call).
  const Rational t0(1, 2);

  for (const char* htext : {"1/1000", "1/2000", "1/4000"}) {
    Rational hq = Rational::parse(htext);
    TrackResult tr = vieta::track(sys, t0 - hq, t0 + hq, 3, tol);
    REQUIRE(tr.samples.size() == 3);
    const auto& bwd = tr.samples[0];
    const auto& mid = tr.samples[1];
    const auto& fwd = tr.samples[2];
    REQUIRE(mid.particles.size() == 9);
    REQUIRE(!mid.near_event);
    for (std::size_t i = 0; i < 9; ++i) {
      const std::complex<double> fd_vx =
          (fwd.particles[i].x - bwd.particles[i].x) / (2 * hq.to_double());
      CHECK(std::abs(fd_vx - mid.derivs[i].vx) <
            200 * hq.to_double() * hq.to_double() +
                1e-6 * (std::abs(fd_vx) + 1));
    }
  }
}

TEST_CASE("creation event: two real roots appear where the discriminant vanishes") {
  // x^2 = t has no real roots for t < 0 and two for t > 0.
  auto sys = vieta::load_system(vieta::parse_poly("x^2 - t"),
                                vieta::parse_poly("y - x"));
  TrackResult tr = vieta::track(sys, Rational(-1), Rational(1), 11, Tolerances{});
  REQUIRE(tr.events.size() == 1);
  const Event& ev = tr.events.front();
  CHECK(ev.kind == EventKind::Creation);
  CHECK(ev.count_change_x == 2);
  CHECK(ev.count_change_y == 2);
  // the event time is exactly t = 0
  CHECK(ev.exact);
  CHECK(ev.midpoint() == Rational(0));
  // location: the colliding pair sits at x = 0, y = 0
  CHECK(std::abs(ev.x) < 1e-9);
  CHECK(std::abs(ev.y) < 1e-9);

  // samples on either side have the right real-root counts
  for (const auto& s : tr.samples) {
    if (s.near_event) continue;
    int real_x = 0;
    for (std::size_t i = 0; i < s.particles.size(); ++i)
      if (s.particles[i].kind == vieta::CoordKind::Real) ++real_x;
    if (s.t < Rational(0)) CHECK(real_x == 0);
    if (s.t > Rational(0)) CHECK(real_x == 2);
  }
}

TEST_CASE("annihilation is the time-reverse of creation") {
  // x^2 = -t: two real roots for t < 0, none after.
  auto sys = vieta::load_system(vieta::parse_poly("x^2 + t"),
                                vieta::parse_poly("y - x"));
  TrackResult tr = vieta::track(sys, Rational(-1), Rational(1), 11, Tolerances{});
  REQUIRE(tr.events.size() == 1);
  CHECK(tr.events.front().kind == EventKind::Annihilation);
  CHECK(tr.events.front().count_change_x == -2);
}

TEST_CASE("event detection on the nine-particle system") {
  auto sys = vieta::load_system(
      vieta::parse_poly("-2*x^3 + y^3 + t*x + t*y + y + 2"),
      vieta::parse_poly("-x^3 - 2*x^2*y + t + 3"));
  Eliminants el = vieta::eliminants(sys);
  auto events = vieta::detect_events(el, Rational(-4), Rational(4), Tolerances{});
  CHECK(events.size() == 3);
  // one of them is the exact rational time t = -3
  bool saw_exact_minus3 = false;
  for (const auto& ev : events)
    if (ev.exact && ev.midpoint() == Rational(-3)) saw_exact_minus3 = true;
  CHECK(saw_exact_minus3);
  // events are ordered and disjoint
  for (std::size_t i = 0; i + 1 < events.size(); ++i)
    CHECK(events[i].t_hi <= events[i + 1].t_lo);
}

TEST_CASE("identity continuity: ids never jump between adjacent samples") {
  auto sys = vieta::load_system(
      vieta::parse_poly("-2*x^3 + y^3 + t*x + t*y + y + 2"),
      vieta::parse_poly("-x^3 - 2*x^2*y + t + 3"));
  TrackResult tr = vieta::track(sys, Rational(0), Rational(2), 41, Tolerances{});
  for (std::size_t s = 1; s < tr.samples.size(); ++s) {
    const auto& prev = tr.samples[s - 1];
    const auto& cur = tr.samples[s];
    if (prev.near_event || cur.near_event) continue;
    REQUIRE(prev.particles.size() == cur.particles.size());
    const double dt = (cur.t - prev.t).to_double();
    for (std::size_t i = 0; i < cur.particles.size(); ++i) {
      // displacement is bounded by velocity * dt, up to curvature slack
      const double dx = std::abs(cur.particles[i].x - prev.particles[i].x);
      const double bound =
          (std::abs(prev.derivs[i].vx) + std::abs(cur.derivs[i].vx) + 1.0) * dt;
      CHECK(dx < 5 * bound + 1e-6);
    }
  }
}

TEST_CASE("halving the step leaves trajectories consistent") {
  auto sys = vieta::load_system(
      vieta::parse_poly("-2*x^3 + y^3 + t*x + t*y + y + 2"),
      vieta::parse_poly("-x^3 - 2*x^2*y + t + 3"));
  TrackResult coarse = vieta::track(sys, Rational(0), Rational(1), 11, Tolerances{});
  TrackResult fine = vieta::track(sys, Rational(0), Rational(1), 21, Tolerances{});
  // every coarse sample time appears in the fine grid with matching states
  for (std::size_t c = 0; c < coarse.samples.size(); ++c) {
    const auto& cs = coarse.samples[c];
    const auto& fsample = fine.samples[2 * c];
    REQUIRE(fsample.t == cs.t);
    REQUIRE(fsample.particles.size() == cs.particles.size());
    for (std::size_t i = 0; i < cs.particles.size(); ++i)
      CHECK(std::abs(fsample.particles[i].x - cs.particles[i].x) < 1e-7);
  }
}

TEST_CASE("tracker rejects inverted ranges and tiny grids") {
  auto sys = vieta::load_system(vieta::parse_poly("x - t"),
                                vieta::parse_poly("y - t"));
  CHECK_THROWS_AS(vieta::track(sys, Rational(1), Rational(-1), 10, Tolerances{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(vieta::track(sys, Rational(0), Rational(1), 1, Tolerances{}),
                  std::invalid_argument);
}
