#pragma once

// Diagnostics that turn viscous runs into convergence statements: sup-norm
// differences, dyadic Hoelder seminorms, log-log rate fits and comparison
// with the inner profile in blow-up coordinates.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "viscid/parabolic.hpp"
#include "viscid/profile.hpp"

namespace viscid {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// (log nu, log y).
  std::vector<std::pair<double, double>> points;
};

/// Ordinary least squares of log y against log nu. Needs >= 3 pairs with
/// distinct nu and y > 0; throws ConfigError otherwise.
[[nodiscard]] RateFit fit_rate(std::span<const std::pair<double, double>> nu_y);

enum class PairScheme { dyadic };

struct HolderEstimate {
  double alpha = 0.0;
  double seminorm = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  PairScheme scheme = PairScheme::dyadic;
  std::size_t pairs = 0;
};

/// max |f_i - f_j| / |x_i - x_j|^alpha over pairs j = i + 2^k of sample points
/// inside [x_lo, x_hi]. x must be increasing and uniformly spaced for the
/// dyadic separations to be dyadic in distance. Throws CoverageError if the
/// window is not inside the sampled range.
[[nodiscard]] HolderEstimate holder_seminorm(std::span<const double> x, std::span<const double> f,
                                             double alpha, double x_lo, double x_hi);

using PointFilter = std::function<bool(SpacetimePoint)>;

/// max over stored times and cells (optionally filtered) of
/// |slab(component) - reference| with the reference evaluated at cell centres.
[[nodiscard]] double sup_diff(const FieldSlab& slab, const ScalarField& reference,
                              std::size_t component, const PointFilter& filter = {});

struct InnerBoxBounds {
  double T_lo = -1.0;
  double T_hi = 0.0;
  double X_lo = -3.0;
  double X_hi = 3.0;
};

/// sup over sample points of |nu^{-1/4} sigma(nu^{1/2} T, nu^{3/4} X) - U(T, X)|.
/// Time samples are the slab's stored times whose image lies in [T_lo, T_hi];
/// X samples are n_x uniform points. sigma is linearly interpolated in x.
[[nodiscard]] double universal_compare(const FieldSlab& slab, const InnerProfile& U, double nu,
                                       const InnerBoxBounds& box, std::size_t n_x = 241);

}  // namespace viscid
