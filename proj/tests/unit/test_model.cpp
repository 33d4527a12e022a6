#include <gtest/gtest.h>

#include <random>

#include "viscid/errors.hpp"
#include "viscid/model.hpp"

using namespace viscid;

TEST(Burgers, Examples) {
  const SystemSpec s = make_burgers();
  EXPECT_EQ(s.n_components(), 1u);
  EXPECT_EQ(s.label(), "burgers");
  EXPECT_EQ(s.wave_speed_bound(), 0.0);
  EXPECT_EQ(s.flux(StateVector{2.0})[0], 2.0);
  EXPECT_EQ(s.jacobian(StateVector{0.0})(0, 0), 0.0);
  EXPECT_EQ(s.diffusion(StateVector{-7.0})(0, 0), 1.0);
  EXPECT_EQ(s.cubic().a, -1.0);
  EXPECT_EQ(s.cubic().b, -1.0);
  EXPECT_EQ(s.cubic().b_diff, 1.0);
}

TEST(BurgersTransport, Examples) {
  const SystemSpec s = make_burgers_transport(2.0);
  EXPECT_EQ(s.n_components(), 2u);
  EXPECT_EQ(s.label(), "burgers-transport");
  EXPECT_EQ(s.wave_speed_bound(), 1.0);
  const SmallMatrix A = s.jacobian(StateVector{0.0, 0.0});
  EXPECT_EQ(A(0, 0), 0.0);
  EXPECT_EQ(A(0, 1), 0.0);
  EXPECT_EQ(A(1, 0), 0.0);
  EXPECT_EQ(A(1, 1), -1.0);

  // row 2 of B applied to d_x(v, w) = (3, 11) picks out b_cross * d_x v
  const SmallMatrix B = s.diffusion(StateVector{0.4, -0.2});
  EXPECT_EQ(B(1, 0) * 3.0 + B(1, 1) * 11.0, 6.0);

  const SmallMatrix B0 = make_burgers_transport(0.0).diffusion(StateVector{0.0, 0.0});
  int nonzero = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) nonzero += B0(i, j) != 0.0;
  }
  EXPECT_EQ(nonzero, 1);
}

TEST(EvalSystem, Examples) {
  const SystemEval a = eval_system(make_burgers(), {0.0});
  EXPECT_EQ(a.flux[0], 0.0);
  EXPECT_EQ(a.jacobian(0, 0), 0.0);
  EXPECT_EQ(a.diffusion(0, 0), 1.0);
  const SystemEval b = eval_system(make_burgers(), {3.0});
  EXPECT_EQ(b.flux[0], 4.5);
  EXPECT_EQ(b.jacobian(0, 0), 3.0);
  EXPECT_EQ(b.diffusion(0, 0), 1.0);
  const SystemEval c = eval_system(make_burgers_transport(2.0), {1.0, 5.0});
  EXPECT_EQ(c.flux[0], 0.5);
  EXPECT_EQ(c.flux[1], -5.0);
  EXPECT_THROW((void)eval_system(make_burgers(), {1.0, 2.0}), ConfigError);
}

TEST(Registry, Labels) {
  EXPECT_EQ(make_system("burgers").kind(), SystemKind::burgers);
  EXPECT_EQ(make_system("burgers-transport", 0.5).b_cross(), 0.5);
  EXPECT_THROW((void)make_system("euler"), ConfigError);
}

TEST(Jacobian, MatchesFluxDerivative) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const SystemSpec& s : {make_burgers(), make_burgers_transport(1.0), make_scaled_burgers({-2.0, -0.5, 3.0})}) {
    const std::size_t n = s.n_components();
    for (int k = 0; k < 20; ++k) {
      StateVector psi(n);
      for (double& v : psi) v = u(rng);
      const SmallMatrix A = s.jacobian(psi);
      for (std::size_t j = 0; j < n; ++j) {
        StateVector hi = psi, lo = psi;
        hi[j] += 1e-6;
        lo[j] -= 1e-6;
        const StateVector fh = s.flux(hi), fl = s.flux(lo);
        for (std::size_t i = 0; i < n; ++i) {
          EXPECT_NEAR((fh[i] - fl[i]) / 2e-6, A(i, j), 1e-6 * std::max(1.0, std::abs(A(i, j))));
        }
      }
    }
  }
}

TEST(Hypotheses, FrozenBasisAtZero) {
  for (const SystemSpec& s : {make_burgers(), make_burgers_transport(1.0), make_burgers_transport(-3.0),
                              make_scaled_burgers({-2.0, -0.5, 3.0})}) {
    const StateVector zero(s.n_components(), 0.0);
    const SmallMatrix A = s.jacobian(zero);
    const SmallMatrix B = s.diffusion(zero);
    EXPECT_EQ(A(0, 0), 0.0);
    for (std::size_t i = 0; i < s.n_components(); ++i) {
      for (std::size_t j = 0; j < s.n_components(); ++j) {
        if (i != j) {
          EXPECT_EQ(A(i, j), 0.0);
        }
      }
    }
    EXPECT_EQ(B(0, 0), s.cubic().b_diff);
    EXPECT_GT(B(0, 0), 0.0);
  }
}

TEST(ScaledBurgers, CoefficientFromCubic) {
  const SystemSpec s = make_scaled_burgers({-2.0, -0.5, 3.0});
  EXPECT_EQ(s.burgers_coefficient(), 2.0);
  EXPECT_EQ(s.flux(StateVector{3.0})[0], 9.0);
  EXPECT_EQ(s.diffusion(StateVector{0.0})(0, 0), 3.0);
}
