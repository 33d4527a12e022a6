#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "viscid/errors.hpp"
#include "viscid/parabolic.hpp"

using namespace viscid;

namespace {

double max_error_at_end(const FieldSlab& s, const std::function<double(double)>& exact) {
  const std::size_t k = s.n_times() - 1;
  double err = 0.0;
  for (std::size_t i = 0; i < s.grid.n_cells; ++i) {
    err = std::max(err, std::abs(s.value(k, 0, i) - exact(s.grid.center(i))));
  }
  return err;
}

ViscousRunConfig x_over_t_config(double nu, std::size_t n) {
  ViscousRunConfig cfg;
  cfg.nu = nu;
  cfg.t0 = -1.0;
  cfg.t_end = -0.5;
  cfg.grid = Grid1D::covering(-1.0, 1.0, n);
  cfg.data = [](SpacetimePoint p) { return StateVector{p.x / p.t}; };
  cfg.store_times = {-0.5};
  return cfg;
}

}  // namespace

TEST(Grid, Construction) {
  const Grid1D g = Grid1D::covering(-1.0, 1.0, 4);
  EXPECT_DOUBLE_EQ(g.dx, 0.5);
  EXPECT_DOUBLE_EQ(g.center(0), -0.75);
  EXPECT_DOUBLE_EQ(g.x_max(), 1.0);
  EXPECT_LE(Grid1D::with_max_spacing(0.0, 1.0, 0.3).dx, 0.3);
  EXPECT_THROW(Grid1D::covering(0.0, 1.0, 3).validate(), ConfigError);
}

TEST(RunViscous, ConstantDataStaysConstant) {
  ViscousRunConfig cfg;
  cfg.nu = 0.05;
  cfg.grid = Grid1D::covering(-1.0, 1.0, 100);
  cfg.data = [](SpacetimePoint) { return StateVector{0.37}; };
  cfg.store_times = {-0.5, 0.0};
  const FieldSlab s = run_viscous(cfg);
  for (double v : s.data) EXPECT_EQ(v, 0.37);
}

TEST(RunViscous, LinearProfileIsExact) {
  // space discretisation is exact here; what is left is the RK2 error, O(dt^2)
  const FieldSlab s = run_viscous(x_over_t_config(0.1, 800));
  EXPECT_DOUBLE_EQ(s.times.back(), -0.5);
  EXPECT_LE(max_error_at_end(s, [](double x) { return x / -0.5; }), 1e-8);
}

TEST(RunViscous, SecondOrderOnLinearProfile) {
  // the time error dominates; halving dx quarters dt through the diffusive limit
  const double coarse = max_error_at_end(run_viscous(x_over_t_config(0.01, 400)), [](double x) { return -2 * x; });
  const double fine = max_error_at_end(run_viscous(x_over_t_config(0.01, 800)), [](double x) { return -2 * x; });
  ASSERT_GT(fine, 0.0);
  EXPECT_GE(coarse / fine, 3.5);
}

TEST(RunViscous, PureDiffusionFollowsHeatKernel) {
  const double nu = 0.01, s0 = 0.1;
  auto gauss = [=](SpacetimePoint p) {
    const double var = s0 * s0 + 2 * nu * (p.t + 1.0);
    return StateVector{s0 / std::sqrt(var) * std::exp(-p.x * p.x / (2 * var))};
  };
  ViscousRunConfig cfg;
  cfg.nu = nu;
  cfg.grid = Grid1D::covering(-1.0, 1.0, 400);
  cfg.data = gauss;
  cfg.disable_flux = true;
  cfg.store_times = {0.0};
  const FieldSlab s = run_viscous(cfg);
  EXPECT_LE(max_error_at_end(s, [&](double x) { return gauss({0.0, x})[0]; }), 1e-4);
}

TEST(RunViscous, ConservesWithBoundaryFlux) {
  ViscousRunConfig cfg;
  cfg.nu = 0.02;
  cfg.grid = Grid1D::covering(-1.0, 2.0, 600);
  cfg.data = [](SpacetimePoint p) { return StateVector{cubic_root(p, CubicParams{})}; };
  cfg.store_times = {0.0};
  const FieldSlab s = run_viscous(cfg);
  const RunStats& st = s.stats;
  const double budget = st.final_integral[0] - st.initial_integral[0] - st.boundary_inflow[0];
  EXPECT_LE(std::abs(budget), 1e-8 * std::max(1.0, std::abs(st.initial_integral[0])));
}

TEST(RunViscous, Deterministic) {
  const FieldSlab a = run_viscous(x_over_t_config(0.02, 200));
  const FieldSlab b = run_viscous(x_over_t_config(0.02, 200));
  ASSERT_EQ(a.data.size(), b.data.size());
  EXPECT_EQ(std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(double)), 0);
}

TEST(RunViscous, ValidationNamesTheInvariant) {
  ViscousRunConfig cfg = x_over_t_config(1e-3, 50);
  try {
    (void)run_viscous(cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("0.25 nu^{3/4}"), std::string::npos);
  }
  cfg = x_over_t_config(0.01, 400);
  cfg.t_end = 0.1;
  EXPECT_THROW((void)run_viscous(cfg), ConfigError);
  cfg = x_over_t_config(0.01, 400);
  cfg.system = make_burgers_transport(1.0);
  cfg.measure_undiffused = true;
  EXPECT_THROW((void)run_viscous(cfg), ConfigError);
}

TEST(RunViscous, NanAborts) {
  ViscousRunConfig cfg = x_over_t_config(0.01, 400);
  cfg.data = [](SpacetimePoint p) { return StateVector{p.x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0}; };
  EXPECT_THROW((void)run_viscous(cfg), InstabilityError);
}

TEST(BlowUp, Examples) {
  const InnerState id = blowup({-0.3, 0.7}, {0.2}, 1.0);
  EXPECT_EQ(id.T, -0.3);
  EXPECT_EQ(id.X, 0.7);
  EXPECT_EQ(id.Psi[0], 0.2);

  // nu^{-1/2} = 100, nu^{-3/4} = 1000, nu^{-1/4} = 10
  const InnerState s = blowup({-1e-2, 1e-3}, {1e-1}, 1e-4);
  EXPECT_NEAR(s.T, -1.0, 1e-14);
  EXPECT_NEAR(s.X, 1.0, 1e-14);
  EXPECT_NEAR(s.Psi[0], 1.0, 1e-14);
  const InnerState w = blowup({-1e-2, 1e-2}, {1e-1}, 1e-4);
  EXPECT_NEAR(w.X, 10.0, 1e-13);

  for (double nu : {1e-2, 3e-5, 0.7}) {
    const OuterState o = blowdown(blowup({-0.123, 0.456}, {0.789, -0.1}, nu), nu);
    EXPECT_NEAR(o.p.t, -0.123, 1e-14);
    EXPECT_NEAR(o.p.x, 0.456, 1e-14);
    EXPECT_NEAR(o.psi[0], 0.789, 1e-14);
    EXPECT_NEAR(o.psi[1], -0.1, 1e-14);
  }
}

TEST(GridScaling, Examples) {
  std::vector<SpacetimePoint> pts;
  for (int i = 1; i <= 10; ++i) pts.push_back({-0.4 * i, 1.3 * i - 6.0});
  EXPECT_LE(grid_scaling_check(0, 0, 1e-4, CubicParams{}, pts), 1e-12);
  EXPECT_LE(grid_scaling_check(1, 0, 1e-4, CubicParams{}, pts), 1e-10);
  EXPECT_EQ(grid_scaling_check(0, 0, 1.0, CubicParams{}, pts), 0.0);
  EXPECT_EQ(grid_scaling_check(1, 0, 1.0, CubicParams{}, pts), 0.0);
  EXPECT_THROW((void)grid_scaling_check(2, 0, 1e-4, CubicParams{}, pts), ConfigError);
  EXPECT_THROW((void)grid_scaling_check(0, 1, 1e-4, CubicParams{}, pts), ConfigError);
}

TEST(InnerProfile, OddAndMatchesInitialData) {
  const Grid1D g = Grid1D::covering(-16.0, 16.0, 161);
  const std::vector<double> store{-16.0, -8.0, -1.0, 0.0};
  const InnerProfile U = inner_profile_U(-16.0, 16.0, g, CubicParams{}, store);
  for (double T : store) {
    EXPECT_NEAR(U(T, 0.0), 0.0, 1e-12);
    for (double X : {0.5, 3.0, 9.0}) EXPECT_NEAR(U(T, X), -U(T, -X), 1e-12);
  }
  const std::size_t k0 = U.slab().nearest_time(-16.0);
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    EXPECT_EQ(U.slab().value(k0, 0, i), cubic_root({-16.0, g.center(i)}, CubicParams{}));
  }
  EXPECT_THROW((void)inner_profile_U(-2.0, 16.0, g, CubicParams{}, store), ConfigError);
  EXPECT_THROW((void)U(0.0, 17.0), CoverageError);
}
