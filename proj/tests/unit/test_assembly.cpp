#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "viscid/assembly.hpp"
#include "viscid/errors.hpp"

using namespace viscid;

namespace {

const CubicParams kDefault{};

SpacetimePoint at_distance(double e, double angle) { return {-e * std::abs(std::sin(angle)), e * std::cos(angle)}; }

// Small inner profile, enough for points with |T| <= 8, |X| <= 8.
const InnerProfile& small_U() {
  static const InnerProfile U = [] {
    std::vector<double> store;
    for (int k = 0; k <= 80; ++k) store.push_back(-8.0 + 0.1 * k);
    return inner_profile_U(-32.0, 32.0, Grid1D::covering(-32.0, 32.0, 321), kDefault, store);
  }();
  return U;
}

}  // namespace

TEST(FitRadius, BurgersAndTransport) {
  // brute force over the contour t = -cos(x)/S
  for (double S : {1.0, 2.0}) {
    double best = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      const double x = -std::numbers::pi / 2 + std::numbers::pi * i / 200000;
      best = std::min(best, std::hypot(std::cos(x) / S, x));
    }
    EXPECT_NEAR(fit_radius(S), best, 1e-8);
    EXPECT_GE(fit_radius(S), 0.3);
    EXPECT_LE(fit_radius(S), 1.0);
  }
  EXPECT_DOUBLE_EQ(fit_radius(make_burgers()), 1.0);
  EXPECT_EQ(contour_speed(make_burgers_transport(1.0)), 2.0);
}

TEST(MatchedConfig, Validation) {
  MatchedConfig mc = make_matched_config(make_burgers(), 1e-3);
  EXPECT_EQ(mc.cutoff_R, fit_radius(make_burgers()));
  EXPECT_EQ(make_matched_config(make_burgers(), 1e-3, 1, 0, 0.47, 8.0).cutoff_R, 8.0 * mc.cutoff_R);
  EXPECT_THROW((void)make_matched_config(make_burgers(), 1e-3, 1, 0, 0.5), ConfigError);
  EXPECT_THROW((void)make_matched_config(make_burgers(), 1e-3, 1, 0, 6.0 / 13.0), ConfigError);
  EXPECT_THROW((void)make_matched_config(make_burgers(), 1e-3, 1, 1), ConfigError);
  EXPECT_THROW((void)make_matched_config(make_burgers(), 1e-3, 2, 0), ConfigError);
  EXPECT_THROW((void)make_matched_config(make_burgers(), 1e-3, 1, 0, 0.47, 0.0), ConfigError);
}

TEST(RegionClassify, Examples) {
  const SystemSpec s = make_burgers();
  const MatchedConfig mc = make_matched_config(s, 1e-3);
  EXPECT_EQ(region_classify({-0.6, 0.8}, mc, s).zone, Zone::outer);
  const RegionTag o = region_classify({0.0, 0.0}, mc, s);
  EXPECT_EQ(o.zone, Zone::inner);
  EXPECT_TRUE(o.diffusive);
  EXPECT_EQ(region_classify(at_distance(0.375 * mc.matching_radius(), 0.3), mc, s).zone, Zone::matching);
  EXPECT_THROW((void)region_classify({0.1, 0.0}, mc, s), DomainError);
}

TEST(RegionClassify, PartitionAgreesWithCutoff) {
  const SystemSpec s = make_burgers();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi), frac(0.0, 1.5);
  for (double nu : {1e-2, 1e-3, 1e-4}) {
    for (double scale : {1.0, kDeskCutoffScale}) {
      const MatchedConfig mc = make_matched_config(s, nu, 1, 0, 0.47, scale);
      for (int k = 0; k < 3000; ++k) {
        const SpacetimePoint p = at_distance(frac(rng) * 0.5 * mc.matching_radius(), ang(rng));
        const RegionTag tag = region_classify(p, mc, s);
        const double z = cutoff_zeta(p, mc);
        if (tag.zone == Zone::outer) {
          EXPECT_EQ(z, 1.0);
        }
        if (tag.zone == Zone::inner) {
          EXPECT_EQ(z, 0.0);
        }
        if (tag.diffusive) {
          EXPECT_EQ(tag.zone, Zone::inner);
        }
      }
    }
  }
}

TEST(SmoothStep, ShapeAndSymmetry) {
  EXPECT_EQ(smooth_step(0.5), 0.0);
  EXPECT_EQ(smooth_step(-3.0), 0.0);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_EQ(smooth_step(7.0), 1.0);
  EXPECT_DOUBLE_EQ(smooth_step(0.75), 0.5);
  for (double d : {0.01, 0.1, 0.2}) EXPECT_NEAR(smooth_step(0.75 + d) + smooth_step(0.75 - d), 1.0, 1e-15);
  double prev = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double v = smooth_step(0.4 + 0.7 * i / 10000.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(CutoffZeta, ExamplesAndNoKinks) {
  const MatchedConfig mc = make_matched_config(make_burgers(), 1e-3);
  const double r = mc.matching_radius();
  EXPECT_EQ(cutoff_zeta(at_distance(0.5 * r, 0.2), mc), 1.0);
  EXPECT_EQ(cutoff_zeta(at_distance(0.7 * r, 0.2), mc), 1.0);
  EXPECT_EQ(cutoff_zeta(at_distance(0.25 * r, 0.2), mc), 0.0);
  EXPECT_EQ(cutoff_zeta(at_distance(0.1 * r, 0.2), mc), 0.0);
  const double mid = cutoff_zeta({0.0, 0.375 * r}, mc);
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  EXPECT_NEAR(mid, 0.5, 1e-12);

  const double h = 1e-8 * r;
  for (double e0 : {0.25 * r, 0.5 * r}) {
    auto z = [&](double e) { return cutoff_zeta({0.0, e}, mc); };
    const double left = (z(e0) - z(e0 - h)) / h;
    const double right = (z(e0 + h) - z(e0)) / h;
    EXPECT_LE(std::abs(right - left), 1e-6);
  }
}

TEST(InnerDistances, MatchScaledEuclidean) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> T(-50.0, 0.0), X(-200.0, 200.0);
  for (double nu : {1e-2, 1e-4}) {
    for (int k = 0; k < 1000; ++k) {
      const double t = T(rng), x = X(rng);
      const InnerDistances d = inner_distances(t, x, nu, kDefault);
      const double scaled = euclidean_distance({std::sqrt(nu) * t, std::pow(nu, 0.75) * x}) / std::sqrt(nu);
      EXPECT_NEAR(d.E, scaled, 1e-14 * scaled);
      EXPECT_NEAR(d.D, profile_eval({t, x}, kDefault).d, 1e-12 * d.D);
    }
  }
}

TEST(MatchedSolution, OuterAndInnerLimits) {
  const SystemSpec s = make_burgers();
  const InviscidSolution sol{};
  const MatchedConfig mc = make_matched_config(s, 1e-3);
  const InnerProfile& U = small_U();

  const SpacetimePoint far{-0.5, 0.3};
  EXPECT_EQ(matched_solution(mc, far, U, sol)[0],
            inviscid_eval(sol, far)[0] + mc.nu * outer_corrector_psi1(sol, far));

  const SpacetimePoint deep{-2e-3, 1e-3};
  ASSERT_EQ(cutoff_zeta(deep, mc), 0.0);
  EXPECT_EQ(matched_solution(mc, deep, U, sol)[0],
            std::pow(mc.nu, 0.25) * U(deep.t / std::sqrt(mc.nu), deep.x * std::pow(mc.nu, -0.75)));

  MatchedConfig k0 = mc;
  k0.K = 0;
  EXPECT_EQ(matched_solution(k0, far, U, sol)[0], inviscid_eval(sol, far)[0]);
}

TEST(MatchedSolution, ContinuousAcrossCutoffRadii) {
  const InviscidSolution sol{};
  const MatchedConfig mc = make_matched_config(make_burgers(), 1e-2);
  const InnerProfile& U = small_U();
  const double r = mc.matching_radius();
  double worst = 0.0;
  for (double angle : {0.1, 0.7, 1.3, 2.2, 3.0}) {
    for (double e0 : {0.25 * r, 0.5 * r}) {
      const double eps = 1e-13 * r;
      const double a = matched_solution(mc, at_distance(e0 - eps, angle), U, sol)[0];
      const double b = matched_solution(mc, at_distance(e0 + eps, angle), U, sol)[0];
      worst = std::max(worst, std::abs(a - b));
    }
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(MatchedSolution, RequiresCoverageAndBurgers) {
  InviscidSolution sol{};
  const MatchedConfig mc = make_matched_config(make_burgers(), 1e-5);
  const MatchedConfig wide = make_matched_config(make_burgers(), 1e-4, 1, 0, 0.47, 20.0);
  EXPECT_THROW((void)matched_solution(wide, {-0.1, 0.0}, small_U(), sol), CoverageError);
  sol.system = make_burgers_transport(1.0);
  EXPECT_THROW((void)matched_solution(make_matched_config(sol.system, 1e-3), {-0.5, 0.1}, small_U(), sol),
               ConfigError);
  const InnerBox box = required_inner_box(mc);
  EXPECT_NEAR(box.T_lo, -std::pow(1e-5, -0.03), 1e-12);
  EXPECT_NEAR(box.X_max, std::pow(1e-5, -0.28), 1e-9);
}

TEST(PdeResidual, ExactViscousSolution) {
  const VectorField f = [](SpacetimePoint p) { return StateVector{p.x / p.t}; };
  for (double nu : {1e-1, 1e-3}) {
    EXPECT_LE(std::abs(pde_residual(f, make_burgers(), nu, {-0.5, 0.3}, 1e-4)[0]), 1e-6);
  }
}

TEST(PdeResidual, InviscidProfileLeavesDiffusionTerm) {
  const InviscidSolution sol{};
  const VectorField f = [&](SpacetimePoint p) { return inviscid_eval(sol, p); };
  const SpacetimePoint p{-0.5, 0.3};
  const double uxx = profile_d2u_dx2(p, kDefault);
  // frozen from an independent high-precision evaluation of -6 u m^3
  EXPECT_NEAR(uxx, 2.1425950996839926, 1e-12);
  for (double nu : {1e-2, 1e-3}) {
    const double r = pde_residual(f, make_burgers(), nu, p, 3e-5)[0];
    EXPECT_NEAR(std::abs(r), nu * std::abs(uxx), 0.01 * nu * std::abs(uxx));
  }
}

TEST(PdeResidual, SizeMismatchThrows) {
  const VectorField f = [](SpacetimePoint) { return StateVector{0.0, 0.0}; };
  EXPECT_THROW((void)pde_residual(f, make_burgers(), 0.1, {-0.5, 0.0}, 1e-3), ConfigError);
  EXPECT_THROW((void)pde_residual(f, make_burgers(), 0.1, {-0.5, 0.0}, 0.0), ConfigError);
}
