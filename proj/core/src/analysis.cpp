#include "viscid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viscid/errors.hpp"

namespace viscid {

RateFit fit_rate(std::span<const std::pair<double, double>> nu_y) {
  if (nu_y.size() < 3) throw ConfigError("fit_rate: need at least 3 points");
  RateFit fit;
  for (const auto& [nu, y] : nu_y) {
    if (!(nu > 0.0)) throw ConfigError("fit_rate: nu must be positive");
    if (!(y > 0.0)) throw ConfigError("fit_rate: y must be positive (got " + std::to_string(y) + ")");
    fit.points.emplace_back(std::log(nu), std::log(y));
  }
  const auto n = static_cast<double>(fit.points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [lx, ly] : fit.points) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [lx, ly] : fit.points) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
    syy += (ly - my) * (ly - my);
  }
  if (sxx <= 0.0) throw ConfigError("fit_rate: nu values must be distinct");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [lx, ly] : fit.points) {
    const double r = ly - (fit.intercept + fit.slope * lx);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

HolderEstimate holder_seminorm(std::span<const double> x, std::span<const double> f, double alpha,
                               double x_lo, double x_hi) {
  if (x.size() != f.size() || x.size() < 2) {
    throw ConfigError("holder_seminorm: need matching x and f with at least two samples");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("holder_seminorm: alpha must lie in (0, 1]");
  const double spacing = x[1] - x[0];
  const double slack = 0.5 * spacing;
  if (x_lo < x.front() - slack || x_hi > x.back() + slack || !(x_hi > x_lo)) {
    throw CoverageError("holder_seminorm: window outside the sampled range");
  }
  const auto first = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), x_lo) - x.begin());
  const auto last = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), x_hi) - x.begin());

  HolderEstimate est;
  est.alpha = alpha;
  est.x_lo = x_lo;
  est.x_hi = x_hi;
  for (std::size_t i = first; i < last; ++i) {
    for (std::size_t s = 1; i + s < last; s *= 2) {
      const std::size_t j = i + s;
      const double q = std::abs(f[j] - f[i]) / std::pow(x[j] - x[i], alpha);
      est.seminorm = std::max(est.seminorm, q);
      ++est.pairs;
    }
  }
  return est;
}

double sup_diff(const FieldSlab& slab, const ScalarField& reference, std::size_t component,
                const PointFilter& filter) {
  if (component >= slab.n_components) throw ConfigError("sup_diff: component out of range");
  double worst = 0.0;
  for (std::size_t k = 0; k < slab.n_times(); ++k) {
    const auto row = slab.component(k, component);
    for (std::size_t i = 0; i < slab.grid.n_cells; ++i) {
      const SpacetimePoint p{slab.times[k], slab.grid.center(i)};
      if (filter && !filter(p)) continue;
      worst = std::max(worst, std::abs(row[i] - reference(p)));
    }
  }
  return worst;
}

double universal_compare(const FieldSlab& slab, const InnerProfile& U, double nu,
                         const InnerBoxBounds& box, std::size_t n_x) {
  if (!(nu > 0.0)) throw ConfigError("universal_compare: nu must be positive");
  if (box.T_lo > box.T_hi || box.X_lo > box.X_hi) throw ConfigError("universal_compare: empty box");
  const double st = std::sqrt(nu);
  const double sx = std::pow(nu, 0.75);
  const double s_psi = std::pow(nu, -0.25);
  if (!U.covers(box.T_lo, box.T_hi, box.X_lo, box.X_hi)) {
    throw CoverageError("universal_compare: inner profile does not cover the box");
  }
  if (!slab.covers(slab.times.empty() ? 0.0 : slab.times.front(),
                   slab.times.empty() ? 0.0 : slab.times.back(), sx * box.X_lo, sx * box.X_hi)) {
    throw CoverageError("universal_compare: viscous grid does not cover the box");
  }
  const std::size_t nx = (box.X_hi > box.X_lo) ? std::max<std::size_t>(n_x, 2) : 1;
  constexpr double kTimeSlack = 1e-9;
  double worst = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < slab.n_times(); ++k) {
    const double T = slab.times[k] / st;
    if (T < box.T_lo - kTimeSlack || T > box.T_hi + kTimeSlack) continue;
    const double Tc = std::clamp(T, box.T_lo, box.T_hi);
    any = true;
    for (std::size_t j = 0; j < nx; ++j) {
      const double X = (nx == 1) ? box.X_lo
                                 : box.X_lo + (box.X_hi - box.X_lo) * static_cast<double>(j) /
                                                  static_cast<double>(nx - 1);
      const double rescaled = s_psi * slab.interpolate_x(k, 0, sx * X);
      worst = std::max(worst, std::abs(rescaled - U(Tc, X)));
    }
  }
  if (!any) throw CoverageError("universal_compare: no stored time inside the box");
  return worst;
}

}  // namespace viscid
