#pragma once

// Gluing of the outer expansion (inviscid solution plus nu * psi^(1)) and the
// inner viscous Burgers profile with a smooth cutoff in the Euclidean
// distance e = |(t, x)|, and a finite-difference PDE residual.

#include <functional>

#include "viscid/hyperbolic.hpp"
#include "viscid/model.hpp"
#include "viscid/parabolic.hpp"
#include "viscid/profile.hpp"

namespace viscid {

struct MatchedConfig {
  /// Outer truncation order, 0 or 1.
  int K = 1;
  /// Inner truncation order; only 0 is supported.
  int L = 0;
  /// Matching exponent, strictly inside (6/13, 1/2).
  double beta = 0.47;
  double nu = 1e-2;
  /// Radius R of the largest Euclidean ball inside the data region.
  double cutoff_R = 1.0;

  void validate() const;

  /// Cutoff e-radius R nu^beta.
  [[nodiscard]] double matching_radius() const;
};

/// MatchedConfig with cutoff_R = cutoff_scale * fit_radius(s). At desk-scale nu
/// the glue annulus for cutoff_scale = 1 falls inside the diffusive core, where
/// neither expansion is accurate; the experiments use a larger scale.
[[nodiscard]] MatchedConfig make_matched_config(const SystemSpec& s, double nu, int K = 1,
                                                int L = 0, double beta = 0.47,
                                                double cutoff_scale = 1.0);

/// Cutoff scale used by the matched-solution experiments.
inline constexpr double kDeskCutoffScale = 8.0;

/// S = max_I |lambda_I(0)| + 1.
[[nodiscard]] double contour_speed(const SystemSpec& s);

/// Largest R with {e < R} inside {t > -cos(x)/S, |x| < pi/2}, to 1e-10.
/// Cached per S.
[[nodiscard]] double fit_radius(double contour_speed);
[[nodiscard]] double fit_radius(const SystemSpec& s);

enum class Zone { outer, matching, inner };

struct RegionTag {
  Zone zone = Zone::outer;
  /// d <= sqrt(R)/2 * nu^{1/4}; always a subset of the inner zone for nu <= 1.
  bool diffusive = false;
};

[[nodiscard]] const char* to_string(Zone z) noexcept;

/// outer: e >= R nu^beta / 2 (zeta = 1); inner: e <= R nu^beta / 4 (zeta = 0).
[[nodiscard]] RegionTag region_classify(SpacetimePoint p, const MatchedConfig& mc,
                                        const SystemSpec& s);

struct InnerDistances {
  /// (T^2 + nu^{1/2} X^2)^{1/2} = nu^{-1/2} e(nu^{1/2} T, nu^{3/4} X).
  double E = 0.0;
  /// Cubic distance in inner coordinates.
  double D = 0.0;
};

[[nodiscard]] InnerDistances inner_distances(double T, double X, double nu, const CubicParams& c);

/// Smooth monotone step: 0 for s <= 1/2, 1 for s >= 1, C-infinity in between,
/// symmetric about s = 3/4.
[[nodiscard]] double smooth_step(double s) noexcept;

/// zeta = smooth_step(2 e / (R nu^beta)).
[[nodiscard]] double cutoff_zeta(SpacetimePoint p, const MatchedConfig& mc);

struct MatchedParts {
  double zeta = 0.0;
  /// Empty when zeta == 0.
  StateVector outer;
  /// Empty when zeta == 1.
  StateVector inner;
  StateVector glued;
};

/// Outer (psi^(0) + K nu psi^(1)) and inner (nu^{1/4} U e_1) parts and their
/// cutoff combination. Throws CoverageError when U does not cover the needed point.
[[nodiscard]] MatchedParts matched_parts(const MatchedConfig& mc, SpacetimePoint p,
                                         const InnerProfile& U, const InviscidSolution& sol);

[[nodiscard]] StateVector matched_solution(const MatchedConfig& mc, SpacetimePoint p,
                                           const InnerProfile& U, const InviscidSolution& sol);

/// Inner-coordinate box [T_lo, 0] x [-X_max, X_max] that U must cover for mc.
struct InnerBox {
  double T_lo = 0.0;
  double X_max = 0.0;
};
[[nodiscard]] InnerBox required_inner_box(const MatchedConfig& mc);

using VectorField = std::function<StateVector(SpacetimePoint)>;

/// d_t psi + A(psi) d_x psi - nu B d_x^2 psi at p. Space derivatives use
/// fourth-order five-point stencils with spacing h, the time derivative a
/// centred two-point difference with step h. B is taken at psi(p); it is
/// constant for every built-in system.
[[nodiscard]] StateVector pde_residual(const VectorField& field, const SystemSpec& s, double nu,
                                       SpacetimePoint p, double h);

/// Residual of a stored slab, evaluated through bilinear interpolation.
[[nodiscard]] StateVector pde_residual(const FieldSlab& slab, const SystemSpec& s, double nu,
                                       SpacetimePoint p, double h);

}  // namespace viscid
