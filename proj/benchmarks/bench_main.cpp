#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "viscid/analysis.hpp"
#include "viscid/hyperbolic.hpp"
#include "viscid/parabolic.hpp"
#include "viscid/profile.hpp"

using namespace viscid;

static void BM_CubicRoot(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(-1.0, 0.0), x(-2.0, 2.0);
  std::vector<SpacetimePoint> pts(1024);
  for (auto& p : pts) p = {t(rng), x(rng)};
  const CubicParams c{};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cubic_root(pts[i++ & 1023], c));
  }
}
BENCHMARK(BM_CubicRoot);

static void BM_OuterCorrector(benchmark::State& state) {
  const InviscidSolution sol{};
  const auto method = state.range(0) ? QuadratureMethod::adaptive : QuadratureMethod::closed_form;
  for (auto _ : state) {
    benchmark::DoNotOptimize(outer_corrector_psi1(sol, {-0.5, 0.3}, method));
  }
}
BENCHMARK(BM_OuterCorrector)->Arg(0)->Arg(1);

// Whole run on [-1, 0] x [-2, 2] at the sweep resolution dx = 0.2 nu^{3/4}.
static void BM_RunViscous(benchmark::State& state) {
  const double nu = std::pow(10.0, -0.5 * static_cast<double>(state.range(0)));
  ViscousRunConfig cfg;
  cfg.nu = nu;
  cfg.grid = Grid1D::with_max_spacing(-2.0, 2.0, 0.2 * std::pow(nu, 0.75));
  cfg.data = [](SpacetimePoint p) { return StateVector{cubic_root(p, CubicParams{})}; };
  cfg.store_times = {0.0};
  std::size_t steps = 0;
  for (auto _ : state) {
    const FieldSlab s = run_viscous(cfg);
    steps = s.stats.steps;
    benchmark::DoNotOptimize(s.data.data());
  }
  state.counters["cells"] = static_cast<double>(cfg.grid.n_cells);
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_RunViscous)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_HolderSeminorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), f(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    f[i] = std::cbrt(x[i]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(holder_seminorm(x, f, 0.25, -0.5, 0.5).seminorm);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HolderSeminorm)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

BENCHMARK_MAIN();
