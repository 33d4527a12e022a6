#pragma once

// Self-similar inverse-cubic preshock.
//
// The profile u(t, x) is defined for t <= 0 as the unique real root of
//
//     x = a |t| u + b u^3,        a * b > 0,
//
// together with
//
//     m = a du/dx = 1 / (|t| + 3 b/a u^2),   d = m^{-1/2},   e = (t^2 + x^2)^{1/2}.
//
// u and d are 1-homogeneous and m is (-2)-homogeneous under (t, x) -> (l^2 t, l^3 x).

#include <cmath>
#include <functional>
#include <limits>
#include <span>

namespace viscid {

struct CubicParams {
  double a = -1.0;
  double b = -1.0;
  /// Diffusion coefficient on the shocking component at the origin.
  double b_diff = 1.0;

  /// Throws ConfigError unless a*b > 0 and b_diff > 0.
  void validate() const;

  /// Coefficient of sigma * d_x sigma in the reduced Burgers equation (equals -a).
  [[nodiscard]] double burgers_coefficient() const noexcept { return -a; }
};

struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
};

struct ProfileEval {
  double u = 0.0;
  /// +infinity at the origin.
  double m = 0.0;
  double d = 0.0;
  double e = 0.0;
};

struct ProfileGradient {
  double du_dx = 0.0;
  double du_dt = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Real root of x = a|t|u + b u^3. Odd in x. Throws DomainError for t > 0.
[[nodiscard]] double cubic_root(SpacetimePoint p, const CubicParams& c);

[[nodiscard]] ProfileEval profile_eval(SpacetimePoint p, const CubicParams& c);

/// du/dx = m / a and du/dt = u m. Throws DomainError at the origin.
[[nodiscard]] ProfileGradient profile_gradient(SpacetimePoint p, const CubicParams& c);

/// d^2u/dx^2 = -6 b a^{-3} u m^3 (closed form). Throws DomainError at the origin.
[[nodiscard]] double profile_d2u_dx2(SpacetimePoint p, const CubicParams& c);

[[nodiscard]] inline double euclidean_distance(SpacetimePoint p) noexcept {
  return std::hypot(p.t, p.x);
}

using ScalarField = std::function<double(SpacetimePoint)>;

/// Largest relative violation of f(l^2 t, l^3 x) = l^r f(t, x) over the points:
/// max |f(l^2 t, l^3 x) - l^r f(t, x)| / max(1, |l^r f(t, x)|).
[[nodiscard]] double homogeneity_defect(double r, double lambda,
                                        std::span<const SpacetimePoint> points,
                                        const ScalarField& f);

}  // namespace viscid
