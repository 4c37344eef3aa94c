#include <benchmark/benchmark.h>

#include "vieta/eliminant.hpp"
#include "vieta/parser.hpp"
#include "vieta/rootsolver.hpp"
#include "vieta/sturm.hpp"
#include "vieta/system.hpp"
#include "vieta/tracker.hpp"

using namespace vieta;

namespace {

PolySystem nine() {
  return load_system("-2*x^3 + y^3 + t*x + t*y + y + 2",
                     "-x^3 - 2*x^2*y + t + 3");
}

PolySystem six() {
  return load_system(
      "(3*x^3 - 2*x^2*y + 5*x*y^2 + 7*y^3) + (6*t - 1)*x^2 - (9*t + 1)*x*y"
      " - (5*t + 3)*y^2 + (7*t^2 - 10*t + 3)*x - (4*t^2 + 11*t - 2)*y"
      " + (6*t^3 - 9*t^2 - 13*t - 8)",
      "(7*x^2 + 17*x*y - 12*y^2) + (5*t + 19)*x - (11*t - 21)*y"
      " - (4*t^2 - 3*t - 1)");
}

void bm_multipoly_mul(benchmark::State& state) {
  auto sys = nine();
  MultiPoly f = sys.f1, g = sys.f2;
  // widen the operands so the term maps have something to chew on
  for (int i = 0; i < 2; ++i) {
    f = f * g;
    g = g * sys.f1;
  }
  for (auto _ : state) {
    MultiPoly h = f * g;
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(bm_multipoly_mul);

void bm_eliminants_nine(benchmark::State& state) {
  auto sys = nine();
  for (auto _ : state) {
    Eliminants el = eliminants(sys);
    benchmark::DoNotOptimize(el);
  }
}
BENCHMARK(bm_eliminants_nine);

void bm_eliminants_six(benchmark::State& state) {
  auto sys = six();
  for (auto _ : state) {
    Eliminants el = eliminants(sys);
    benchmark::DoNotOptimize(el);
  }
}
BENCHMARK(bm_eliminants_six);

void bm_solve_roots(benchmark::State& state) {
  auto el = eliminants(nine());
  Tolerances tol;
  const Rational t(7, 3);
  for (auto _ : state) {
    RootSet rs = solve_roots(el.in_x.poly, t, nullptr, tol);
    benchmark::DoNotOptimize(rs);
  }
}
BENCHMARK(bm_solve_roots);

void bm_event_isolation(benchmark::State& state) {
  auto el = eliminants(six());
  UPolyQ d = common_factor(discriminant(el.in_x), discriminant(el.in_y));
  for (auto _ : state) {
    auto roots = isolate_real_roots(d);
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(bm_event_isolation);

void bm_track_step(benchmark::State& state) {
  auto sys = nine();
  Tolerances tol;
  for (auto _ : state) {
    TrackResult tr = track(sys, Rational(0), Rational(1), 8, tol);
    benchmark::DoNotOptimize(tr);
  }
}
BENCHMARK(bm_track_step);

} // namespace

BENCHMARK_MAIN();
