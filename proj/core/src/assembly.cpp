#include "viscid/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "viscid/errors.hpp"

namespace viscid {

void MatchedConfig::validate() const {
  if (K != 0 && K != 1) throw ConfigError("matched config: K must be 0 or 1");
  if (L != 0) throw ConfigError("matched config: only L = 0 is supported");
  if (!(beta > 6.0 / 13.0 && beta < 0.5)) {
    throw ConfigError("matched config: beta must lie strictly inside (6/13, 1/2)");
  }
  if (!(nu > 0.0)) throw ConfigError("matched config: nu must be positive");
  if (!(cutoff_R > 0.0)) throw ConfigError("matched config: cutoff_R must be positive");
}

double MatchedConfig::matching_radius() const { return cutoff_R * std::pow(nu, beta); }

double contour_speed(const SystemSpec& s) { return s.wave_speed_bound() + 1.0; }

namespace {

double contour_distance2(double x, double S) {
  const double t = std::cos(x) / S;
  return t * t + x * x;
}

double compute_fit_radius(double S) {
  // Dense scan of |(t, x)| along the contour, then golden-section refinement.
  constexpr int kSamples = 20001;
  const double half = 0.5 * std::numbers::pi;
  double best_x = 0.0;
  double best = contour_distance2(0.0, S);
  for (int i = 0; i < kSamples; ++i) {
    const double x = -half + std::numbers::pi * i / (kSamples - 1);
    const double v = contour_distance2(x, S);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  const double step = std::numbers::pi / (kSamples - 1);
  double lo = std::max(-half, best_x - step);
  double hi = std::min(half, best_x + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  while (hi - lo > 1e-12) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if (contour_distance2(m1, S) < contour_distance2(m2, S)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::sqrt(std::min(best, contour_distance2(0.5 * (lo + hi), S)));
}

}  // namespace

double fit_radius(double S) {
  if (!(S >= 1.0)) throw ConfigError("fit_radius: contour speed must be >= 1");
  static std::mutex mutex;
  static std::map<double, double> cache;
  const std::lock_guard lock(mutex);
  auto it = cache.find(S);
  if (it == cache.end()) it = cache.emplace(S, compute_fit_radius(S)).first;
  return it->second;
}

double fit_radius(const SystemSpec& s) { return fit_radius(contour_speed(s)); }

MatchedConfig make_matched_config(const SystemSpec& s, double nu, int K, int L, double beta,
                                  double cutoff_scale) {
  if (!(cutoff_scale > 0.0) || !std::isfinite(cutoff_scale)) {
    throw ConfigError("make_matched_config: cutoff_scale must be positive");
  }
  MatchedConfig mc{K, L, beta, nu, cutoff_scale * fit_radius(s)};
  mc.validate();
  return mc;
}

const char* to_string(Zone z) noexcept {
  switch (z) {
    case Zone::outer:
      return "outer";
    case Zone::matching:
      return "matching";
    case Zone::inner:
      return "inner";
  }
  return "?";
}

RegionTag region_classify(SpacetimePoint p, const MatchedConfig& mc, const SystemSpec& s) {
  if (p.t > 0.0) throw DomainError("region_classify: t > 0");
  const ProfileEval ev = profile_eval(p, s.cubic());
  // same argument as cutoff_zeta so the tags and zeta agree at the thresholds
  const double arg = 2.0 * ev.e / mc.matching_radius();
  RegionTag tag;
  if (arg >= 1.0) {
    tag.zone = Zone::outer;
  } else if (arg <= 0.5) {
    tag.zone = Zone::inner;
  } else {
    tag.zone = Zone::matching;
  }
  tag.diffusive = ev.d <= 0.5 * std::sqrt(mc.cutoff_R) * std::pow(mc.nu, 0.25);
  return tag;
}

InnerDistances inner_distances(double T, double X, double nu, const CubicParams& c) {
  InnerDistances out;
  out.E = std::sqrt(T * T + std::sqrt(nu) * X * X);
  out.D = profile_eval({T, X}, c).d;
  return out;
}

double smooth_step(double s) noexcept {
  if (s <= 0.5) return 0.0;
  if (s >= 1.0) return 1.0;
  const double y = 2.0 * (s - 0.5);
  const double f = std::exp(-1.0 / y);
  const double g = std::exp(-1.0 / (1.0 - y));
  return f / (f + g);
}

double cutoff_zeta(SpacetimePoint p, const MatchedConfig& mc) {
  return smooth_step(2.0 * euclidean_distance(p) / mc.matching_radius());
}

MatchedParts matched_parts(const MatchedConfig& mc, SpacetimePoint p, const InnerProfile& U,
                           const InviscidSolution& sol) {
  mc.validate();
  const std::size_t nc = sol.system.n_components();
  if (mc.K == 1 && sol.system.kind() != SystemKind::burgers) {
    throw ConfigError("matched solution: K = 1 requires the scalar Burgers system");
  }
  MatchedParts parts;
  parts.zeta = cutoff_zeta(p, mc);
  parts.glued.assign(nc, 0.0);
  if (parts.zeta > 0.0) {
    parts.outer = inviscid_eval(sol, p);
    if (mc.K == 1) parts.outer[0] += mc.nu * outer_corrector_psi1(sol, p);
    for (std::size_t c = 0; c < nc; ++c) parts.glued[c] += parts.zeta * parts.outer[c];
  }
  if (parts.zeta < 1.0) {
    const double T = p.t / std::sqrt(mc.nu);
    const double X = p.x * std::pow(mc.nu, -0.75);
    parts.inner.assign(nc, 0.0);
    parts.inner[0] = std::pow(mc.nu, 0.25) * U(T, X);
    for (std::size_t c = 0; c < nc; ++c) parts.glued[c] += (1.0 - parts.zeta) * parts.inner[c];
  }
  return parts;
}

StateVector matched_solution(const MatchedConfig& mc, SpacetimePoint p, const InnerProfile& U,
                             const InviscidSolution& sol) {
  return matched_parts(mc, p, U, sol).glued;
}

InnerBox required_inner_box(const MatchedConfig& mc) {
  return {-mc.cutoff_R * std::pow(mc.nu, mc.beta - 0.5),
          mc.cutoff_R * std::pow(mc.nu, mc.beta - 0.75)};
}

StateVector pde_residual(const VectorField& field, const SystemSpec& s, double nu,
                         SpacetimePoint p, double h) {
  if (!(h > 0.0)) throw ConfigError("pde_residual: h must be positive");
  const std::size_t nc = s.n_components();
  const StateVector c0 = field(p);
  const StateVector xm2 = field({p.t, p.x - 2.0 * h});
  const StateVector xm1 = field({p.t, p.x - h});
  const StateVector xp1 = field({p.t, p.x + h});
  const StateVector xp2 = field({p.t, p.x + 2.0 * h});
  const StateVector tm = field({p.t - h, p.x});
  const StateVector tp = field({p.t + h, p.x});
  for (const StateVector* v : {&c0, &xm2, &xm1, &xp1, &xp2, &tm, &tp}) {
    if (v->size() != nc) throw ConfigError("pde_residual: field has the wrong number of components");
  }

  StateVector dt(nc), dx(nc), dxx(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    dt[c] = (tp[c] - tm[c]) / (2.0 * h);
    dx[c] = (xm2[c] - 8.0 * xm1[c] + 8.0 * xp1[c] - xp2[c]) / (12.0 * h);
    dxx[c] = (-xm2[c] + 16.0 * xm1[c] - 30.0 * c0[c] + 16.0 * xp1[c] - xp2[c]) / (12.0 * h * h);
  }
  const SmallMatrix A = s.jacobian(c0);
  const SmallMatrix B = s.diffusion(c0);
  StateVector r(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    double adv = 0.0;
    double diff = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
      adv += A(i, j) * dx[j];
      diff += B(i, j) * dxx[j];
    }
    r[i] = dt[i] + adv - nu * diff;
  }
  return r;
}

StateVector pde_residual(const FieldSlab& slab, const SystemSpec& s, double nu, SpacetimePoint p,
                         double h) {
  VectorField f = [&slab](SpacetimePoint q) {
    StateVector v(slab.n_components);
    for (std::size_t c = 0; c < slab.n_components; ++c) v[c] = slab.interpolate(q.t, c, q.x);
    return v;
  };
  return pde_residual(f, s, nu, p, h);
}

}  // namespace viscid
