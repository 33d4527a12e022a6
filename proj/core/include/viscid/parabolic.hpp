#pragma once

// Direct simulation of d_t psi + d_x f(psi) = nu d_x [B d_x psi] on a uniform
// grid, blow-up coordinates, and the inner viscous Burgers profile U.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "viscid/grid.hpp"
#include "viscid/model.hpp"
#include "viscid/profile.hpp"

namespace viscid {

/// Exact field used for initial data at t0 and Dirichlet values at every stage time.
using ExactField = std::function<StateVector(SpacetimePoint)>;

struct ViscousRunConfig {
  SystemSpec system = make_burgers();
  double nu = 1e-2;
  double t0 = -1.0;
  double t_end = 0.0;
  Grid1D grid{};
  double cfl_adv = 0.4;
  double cfl_diff = 0.4;
  ExactField data;
  std::vector<double> store_times;
  /// Enforce dx <= 0.1 nu so undiffused components are resolved.
  bool measure_undiffused = false;
  /// Test hook: drop the advective flux (pure diffusion).
  bool disable_flux = false;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

struct RunStats {
  std::size_t steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  /// Per component: sum psi dx at t0 and at t_end.
  std::vector<double> initial_integral;
  std::vector<double> final_integral;
  /// Per component: time integral of (F_left - F_right), F the total face flux.
  std::vector<double> boundary_inflow;
};

struct FieldSlab {
  Grid1D grid{};
  std::size_t n_components = 1;
  std::vector<double> requested_times;
  /// Actual times of the stored states (snapped to completed steps).
  std::vector<double> times;
  /// data[(k * n_components + c) * n_cells + i].
  std::vector<double> data;
  RunStats stats{};

  [[nodiscard]] std::size_t n_times() const noexcept { return times.size(); }
  [[nodiscard]] double value(std::size_t k, std::size_t c, std::size_t i) const {
    return data[(k * n_components + c) * grid.n_cells + i];
  }
  [[nodiscard]] std::span<const double> component(std::size_t k, std::size_t c) const {
    return {data.data() + (k * n_components + c) * grid.n_cells, grid.n_cells};
  }
  /// Index of the stored time closest to t.
  [[nodiscard]] std::size_t nearest_time(double t) const;
  /// Linear interpolation in x between cell centres at stored time k.
  [[nodiscard]] double interpolate_x(std::size_t k, std::size_t c, double x) const;
  /// Bilinear interpolation in (t, x). Throws CoverageError outside the stored box.
  [[nodiscard]] double interpolate(double t, std::size_t c, double x) const;
  [[nodiscard]] bool covers(double t_lo, double t_hi, double x_lo, double x_hi) const;
};

/// Explicit SSP-RK2 run. Centred conservative flux on diffused components,
/// third-order upwind-biased flux on undiffused ones, conservative diffusion,
/// exact Dirichlet ghost cells. The last step is shortened to land on t_end.
/// Throws ConfigError, InstabilityError.
[[nodiscard]] FieldSlab run_viscous(const ViscousRunConfig& cfg);

/// Time step the solver would take from the given interior state.
[[nodiscard]] double stable_time_step(const ViscousRunConfig& cfg,
                                      std::span<const std::vector<double>> components);

struct InnerState {
  double T = 0.0;
  double X = 0.0;
  StateVector Psi;
};

struct OuterState {
  SpacetimePoint p{};
  StateVector psi;
};

/// (T, X, Psi) = (nu^{-1/2} t, nu^{-3/4} x, nu^{-1/4} psi).
[[nodiscard]] InnerState blowup(SpacetimePoint p, const StateVector& psi, double nu);
[[nodiscard]] OuterState blowdown(const InnerState& s, double nu);

/// Viscous Burgers profile in blow-up coordinates, stored on a (T, X) box.
class InnerProfile {
 public:
  InnerProfile() = default;
  InnerProfile(FieldSlab slab, CubicParams cubic, double T_min, double X_box);

  /// U(T, X), bilinear. Throws CoverageError outside the stored box.
  [[nodiscard]] double operator()(double T, double X) const;
  [[nodiscard]] bool covers(double T_lo, double T_hi, double X_lo, double X_hi) const;

  [[nodiscard]] const FieldSlab& slab() const noexcept { return slab_; }
  [[nodiscard]] const CubicParams& cubic() const noexcept { return cubic_; }
  [[nodiscard]] double T_min() const noexcept { return T_min_; }
  [[nodiscard]] double X_box() const noexcept { return X_box_; }

 private:
  FieldSlab slab_;
  CubicParams cubic_;
  double T_min_ = 0.0;
  double X_box_ = 0.0;
};

/// Solves d_T S + (-a) S d_X S = b_diff d_X^2 S on [T_min, 0] x [-X_box, X_box]
/// from the cubic profile at T_min with cubic-profile Dirichlet data. The grid
/// must cover [-X_box, X_box]. Requires T_min <= -4 and X_box >= 4.
[[nodiscard]] InnerProfile inner_profile_U(double T_min, double X_box, const Grid1D& grid,
                                           const CubicParams& c,
                                           std::span<const double> store_times,
                                           double cfl_adv = 0.4, double cfl_diff = 0.4);

/// Largest relative deviation between the inner-coordinate rescaling
///   nu^{k - (l+1)/4} outer_term(nu^{1/2} T, nu^{3/4} X)
/// and inner_term(T, X) over the points (given in inner coordinates).
/// Supported (k, l): (0, 0) and (1, 0); anything else throws ConfigError.
[[nodiscard]] double grid_scaling_check(int k, int l, double nu, const ScalarField& outer_term,
                                        const ScalarField& inner_term,
                                        std::span<const SpacetimePoint> inner_points);

/// Same check with the built-in grid terms: u for (0, 0), sigma_{1,0} for (1, 0).
[[nodiscard]] double grid_scaling_check(int k, int l, double nu, const CubicParams& c,
                                        std::span<const SpacetimePoint> inner_points);

}  // namespace viscid
