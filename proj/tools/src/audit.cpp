#include "viscid_cli/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "viscid/analysis.hpp"
#include "viscid/assembly.hpp"
#include "viscid/hyperbolic.hpp"
#include "viscid/parabolic.hpp"
#include "viscid/profile.hpp"

namespace viscid::cli {

namespace {

class Suite {
 public:
  void add(const char* module, const char* name, double value, double bound, bool upper = true) {
    const bool pass = std::isfinite(value) && (upper ? value <= bound : value >= bound);
    checks_.push_back({module, name, value, bound, upper, pass});
  }
  std::vector<AuditCheck> take() { return std::move(checks_); }

 private:
  std::vector<AuditCheck> checks_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<SpacetimePoint> sample_box(std::mt19937_64& rng, std::size_t n, double t_lo, double t_hi,
                                       double x_lo, double x_hi) {
  std::uniform_real_distribution<double> ut(t_lo, t_hi), ux(x_lo, x_hi);
  std::vector<SpacetimePoint> pts(n);
  for (auto& p : pts) p = {ut(rng), ux(rng)};
  return pts;
}

void profile_checks(Suite& s) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mag(0.25, 4.0);
  std::bernoulli_distribution sign(0.5);
  double residual = 0.0, dm = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const double sg = sign(rng) ? 1.0 : -1.0;
    const CubicParams c{sg * mag(rng), sg * mag(rng), 1.0};
    for (const SpacetimePoint& p : sample_box(rng, 250, -3.0, 0.0, -20.0, 20.0)) {
      const ProfileEval e = profile_eval(p, c);
      residual = std::max(residual, std::abs(p.x - c.a * std::abs(p.t) * e.u - c.b * e.u * e.u * e.u) /
                                        std::max(1.0, std::abs(p.x)));
      dm = std::max(dm, std::abs(e.d * e.d * e.m - 1.0));
    }
  }
  s.add("profile", "cubic residual / max(1,|x|)", residual, 1e-12);
  s.add("profile", "|d^2 m - 1|", dm, 1e-12);

  const CubicParams c;
  double violations = 0.0;
  double prev = cubic_root({-0.5, -3.0}, c);
  for (int i = 1; i <= 2000; ++i) {
    const double u = cubic_root({-0.5, -3.0 + 6.0 * i / 2000.0}, c);
    if (!(u < prev)) violations += 1.0;
    prev = u;
  }
  s.add("profile", "monotonicity violations in x", violations, 0.0);

  double fd = 0.0, closed = 0.0;
  const double h = 1e-5;
  for (const SpacetimePoint& p : sample_box(rng, 400, -1.0, -0.05, -1.5, 1.5)) {
    const ProfileEval e = profile_eval(p, c);
    const ProfileGradient g = profile_gradient(p, c);
    closed = std::max({closed, std::abs(g.du_dx - e.m / c.a), std::abs(g.du_dt - e.u * e.m)});
    const double dx = (cubic_root({p.t, p.x + h}, c) - cubic_root({p.t, p.x - h}, c)) / (2 * h);
    const double dt = (cubic_root({p.t + h, p.x}, c) - cubic_root({p.t - h, p.x}, c)) / (2 * h);
    fd = std::max({fd, std::abs(dx - g.du_dx) / std::max(std::abs(g.du_dx), 1e-3),
                   std::abs(dt - g.du_dt) / std::max(std::abs(g.du_dt), 1e-3)});
  }
  s.add("profile", "gradient identities (closed form)", closed, 1e-14);
  s.add("profile", "gradient vs finite differences (relative)", fd, 1e-6);

  double ratio_lo = kInfinity, ratio_hi = 0.0;
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const SpacetimePoint p{-1.0 + i / 200.0, -1.0 + j / 100.0};
      if (p.t == 0.0 && p.x == 0.0) continue;
      const ProfileEval e = profile_eval(p, c);
      ratio_lo = std::min(ratio_lo, e.d * e.d / e.e);
      ratio_hi = std::max(ratio_hi, e.d / std::cbrt(e.e));
    }
  }
  s.add("profile", "min d^2/e on [-1,0]x[-1,1]", ratio_lo, 0.3, false);
  s.add("profile", "max d/e^(1/3) on [-1,0]x[-1,1]", ratio_hi, 3.0);

  const std::vector<SpacetimePoint> pts = sample_box(rng, 200, -2.0, -1e-3, -3.0, 3.0);
  double hom = 0.0;
  for (double lam : {0.5, 2.0, 10.0}) {
    hom = std::max(hom, homogeneity_defect(1.0, lam, pts, [&](SpacetimePoint p) { return cubic_root(p, c); }));
    hom = std::max(hom, homogeneity_defect(1.0, lam, pts, [&](SpacetimePoint p) { return profile_eval(p, c).d; }));
    hom = std::max(hom, homogeneity_defect(-2.0, lam, pts, [&](SpacetimePoint p) { return profile_eval(p, c).m; }));
  }
  s.add("profile", "homogeneity defect of u, d, m", hom, 1e-12);
}

void model_checks(Suite& s) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double jac = 0.0, h4 = 0.0, h5 = 0.0;
  for (const SystemSpec& sys : {make_burgers(), make_burgers_transport(1.0), make_burgers_transport(0.0)}) {
    const std::size_t n = sys.n_components();
    for (int k = 0; k < 20; ++k) {
      StateVector psi(n);
      for (double& v : psi) v = u(rng);
      const SmallMatrix A = sys.jacobian(psi);
      for (std::size_t j = 0; j < n; ++j) {
        StateVector hi = psi, lo = psi;
        hi[j] += 1e-6;
        lo[j] -= 1e-6;
        const StateVector fh = sys.flux(hi), fl = sys.flux(lo);
        for (std::size_t i = 0; i < n; ++i) jac = std::max(jac, rel((fh[i] - fl[i]) / 2e-6, A(i, j)));
      }
    }
    const StateVector zero(n, 0.0);
    const SmallMatrix A0 = sys.jacobian(zero);
    const SmallMatrix B0 = sys.diffusion(zero);
    h4 = std::max(h4, std::abs(A0(0, 0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) h4 = std::max(h4, std::abs(A0(i, j)));
      }
    }
    h5 = std::max(h5, std::abs(B0(0, 0) - sys.cubic().b_diff));
  }
  s.add("model", "Jacobian vs finite differences", jac, 1e-6);
  s.add("model", "A(0) diagonal with A_00(0) = 0", h4, 0.0);
  s.add("model", "B_00(0) = b_diff", h5, 0.0);
}

void hyperbolic_checks(Suite& s) {
  std::mt19937_64 rng(11);
  double res = 0.0;
  for (const SystemSpec& sys : {make_burgers(), make_burgers_transport(1.0)}) {
    InviscidSolution sol;
    sol.system = sys;
    const VectorField f = [&](SpacetimePoint p) { return inviscid_eval(sol, p); };
    int used = 0;
    while (used < 100) {
      const SpacetimePoint p = sample_box(rng, 1, -0.95, -0.02, -1.0, 1.0)[0];
      if (profile_eval(p, sys.cubic()).d < 0.05) continue;
      for (double r : pde_residual(f, sys, 0.0, p, 1e-5)) res = std::max(res, std::abs(r));
      ++used;
    }
  }
  s.add("hyperbolic", "inviscid PDE residual", res, 1e-4);

  // psi1 - sigma10 relative to sigma10 along the self-similar curve x = 0.5 |t|^{3/2}
  InviscidSolution sol;
  const CubicParams c;
  std::vector<double> ratios;
  for (double t : {-0.5, -0.1, -0.02, -0.005}) {
    const SpacetimePoint p{t, 0.5 * std::pow(-t, 1.5)};
    const double g = grid_sigma10(p, c);
    ratios.push_back(std::abs(outer_corrector_psi1(sol, p) - g) / std::abs(g));
  }
  double monotone = 0.0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (!(ratios[i] < ratios[i - 1])) monotone += 1.0;
  }
  s.add("hyperbolic", "|psi1 - sigma10|/|sigma10| increases toward t = 0 (count)", monotone, 0.0);
  s.add("hyperbolic", "|psi1 - sigma10|/|sigma10| overall drop factor", ratios.front() / ratios.back(), 3.0,
        false);

  // eikonal: traced foot constant along a characteristic x(s) = a|s|u0 + b u0^3
  double along = 0.0;
  for (double u0 : {-1.3, -0.4, 0.2, 0.9}) {
    const double foot = trace_characteristic_foot(sol, {-1.0, c.a * u0 + c.b * u0 * u0 * u0});
    for (double t : {-0.8, -0.5, -0.2, -0.01}) {
      const SpacetimePoint p{t, c.a * std::abs(t) * u0 + c.b * u0 * u0 * u0};
      along = std::max(along, std::abs(trace_characteristic_foot(sol, p) - foot));
    }
  }
  s.add("hyperbolic", "eikonal variation along characteristics", along, 1e-8);

  const Grid1D grid = Grid1D::covering(-1.0, 1.0, 200);
  std::vector<double> times;
  for (int k = 0; k <= 30; ++k) times.push_back(-std::pow(10.0, -3.0 * k / 30.0));
  std::sort(times.begin(), times.end());
  const EikonalField eik = eikonal_compute(sol, grid, times);
  double worst = 1.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
      const SpacetimePoint p{times[k], grid.center(i)};
      const double u = eik.at(k, i);
      const double d = profile_eval(p, c).d;
      const double r = (std::abs(p.t) + u * u) / (d * d);
      worst = std::max({worst, r, 1.0 / r});
    }
  }
  s.add("hyperbolic", "eikonal-distance ratio max(r, 1/r)", worst, 4.0);

  double sig = 0.0;
  const double h = 1e-4;
  for (const SpacetimePoint& p : sample_box(rng, 100, -0.9, -0.1, -1.0, 1.0)) {
    auto g = [&](double t, double x) { return grid_sigma10({t, x}, c); };
    auto ug = [&](double t, double x) { return cubic_root({t, x}, c) * grid_sigma10({t, x}, c); };
    const double dt = (g(p.t + h, p.x) - g(p.t - h, p.x)) / (2 * h);
    const double dflux = (ug(p.t, p.x + h) - ug(p.t, p.x - h)) / (2 * h);
    const double r = dt + c.burgers_coefficient() * dflux - c.b_diff * profile_d2u_dx2(p, c);
    sig = std::max(sig, std::abs(r));
  }
  s.add("hyperbolic", "sigma10 PDE residual", sig, 1e-4);

  double quad = 0.0;
  for (const SpacetimePoint& p : sample_box(rng, 20, -0.9, -0.05, -1.5, 1.5)) {
    quad = std::max(quad, std::abs(outer_corrector_psi1(sol, p, QuadratureMethod::adaptive) -
                                   outer_corrector_psi1(sol, p)));
    quad = std::max(quad, rel(grid_sigma10(p, c, QuadratureMethod::adaptive), grid_sigma10(p, c)));
  }
  s.add("hyperbolic", "closed form vs adaptive quadrature", quad, 1e-8);
}

ViscousRunConfig small_burgers(double nu, double lo, double hi, double dx) {
  InviscidSolution sol;
  ViscousRunConfig cfg;
  cfg.nu = nu;
  cfg.grid = Grid1D::with_max_spacing(lo, hi, dx);
  cfg.data = [sol](SpacetimePoint p) { return inviscid_eval(sol, p); };
  cfg.store_times = {-0.5, 0.0};
  return cfg;
}

void parabolic_checks(Suite& s) {
  {
    const ViscousRunConfig cfg = small_burgers(0.05, -1.0, 2.0, 0.25 * std::pow(0.05, 0.75));
    const FieldSlab slab = run_viscous(cfg);
    const RunStats& st = slab.stats;
    const double change = st.final_integral[0] - st.initial_integral[0];
    const double scale = std::max({std::abs(st.initial_integral[0]), std::abs(st.final_integral[0]),
                                   std::abs(st.boundary_inflow[0])});
    s.add("parabolic", "conservation budget (relative)", std::abs(change - st.boundary_inflow[0]) / scale, 1e-8);

    const FieldSlab again = run_viscous(cfg);
    double differ = 0.0;
    for (std::size_t i = 0; i < slab.data.size(); ++i) {
      if (std::memcmp(&slab.data[i], &again.data[i], sizeof(double)) != 0) differ += 1.0;
    }
    s.add("parabolic", "repeat run differing values", differ, 0.0);
  }
  {
    // u = x/t solves viscous Burgers exactly
    auto err = [](double dx) {
      ViscousRunConfig cfg;
      cfg.nu = 0.01;
      cfg.t0 = -1.0;
      cfg.t_end = -0.5;
      cfg.grid = Grid1D::with_max_spacing(-1.0, 1.0, dx);
      cfg.data = [](SpacetimePoint p) { return StateVector{p.x / p.t}; };
      cfg.store_times = {-0.5};
      const FieldSlab slab = run_viscous(cfg);
      double e = 0.0;
      for (std::size_t i = 0; i < slab.grid.n_cells; ++i) {
        e = std::max(e, std::abs(slab.value(0, 0, i) - slab.grid.center(i) / slab.times[0]));
      }
      return e;
    };
    const double dx = 0.25 * std::pow(0.01, 0.75);
    s.add("parabolic", "grid refinement factor on x/t", err(dx) / err(0.5 * dx), 3.5, false);
  }

  const CubicParams c;
  std::mt19937_64 rng(3);
  const std::vector<SpacetimePoint> inner = sample_box(rng, 200, -5.0, -0.01, -8.0, 8.0);
  s.add("parabolic", "grid scaling (0,0)", grid_scaling_check(0, 0, 1e-3, c, inner), 1e-12);
  s.add("parabolic", "grid scaling (1,0)", grid_scaling_check(1, 0, 1e-3, c, inner), 1e-10);

  double trip = 0.0;
  for (const SpacetimePoint& p : sample_box(rng, 100, -1.0, 0.0, -2.0, 2.0)) {
    for (double nu : {1.0, 1e-2, 1e-4}) {
      const OuterState o = blowdown(blowup(p, {0.3, -1.7}, nu), nu);
      trip = std::max({trip, rel(o.p.t, p.t), rel(o.p.x, p.x), rel(o.psi[0], 0.3), rel(o.psi[1], -1.7)});
    }
  }
  s.add("parabolic", "blowdown(blowup) round trip", trip, 1e-14);
}

void assembly_checks(Suite& s) {
  const CubicParams c;
  double r_lo = kInfinity, r_hi = 0.0;
  for (const SystemSpec& sys : {make_burgers(), make_burgers_transport(1.0)}) {
    r_lo = std::min(r_lo, fit_radius(sys));
    r_hi = std::max(r_hi, fit_radius(sys));
  }
  s.add("assembly", "fit radius lower", r_lo, 0.3, false);
  s.add("assembly", "fit radius upper", r_hi, 1.0);

  const SystemSpec burgers = make_burgers();
  double partition = 0.0;
  for (const SystemSpec& sys : {burgers, make_burgers_transport(1.0)}) {
    for (double nu : {3e-2, 1e-2, std::pow(10.0, -2.5), 3e-3, 1e-3, std::pow(10.0, -3.5), 1e-4}) {
      for (double scale : {1.0, kDeskCutoffScale}) {
        const MatchedConfig mc = make_matched_config(sys, nu, 1, 0, 0.47, scale);
        const double r = mc.matching_radius();
        for (int i = 0; i <= 120; ++i) {
          for (int j = -120; j <= 120; ++j) {
            const SpacetimePoint p{-r * i / 120.0, r * j / 120.0};
            const RegionTag tag = region_classify(p, mc, sys);
            const double z = cutoff_zeta(p, mc);
            const bool ok_zone = (tag.zone != Zone::outer || z == 1.0) &&
                                 (tag.zone != Zone::inner || z == 0.0) && z >= 0.0 && z <= 1.0;
            if (!ok_zone || (tag.diffusive && tag.zone != Zone::inner)) partition += 1.0;
          }
        }
      }
    }
  }
  s.add("assembly", "region partition / diffusive-in-inner violations", partition, 0.0);

  const MatchedConfig mc = make_matched_config(burgers, 1e-2);
  const double r = mc.matching_radius();
  double decreasing = 0.0, prev = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double z = cutoff_zeta({-r * i / 4000.0, 0.0}, mc);
    if (z < prev) decreasing += 1.0;
    prev = z;
  }
  s.add("assembly", "zeta decreasing steps in e", decreasing, 0.0);

  double kink = 0.0;
  const double h = 1e-8 * r;
  for (double eb : {0.25 * r, 0.5 * r}) {
    auto z = [&](double e) { return cutoff_zeta({-e, 0.0}, mc); };
    const double left = (z(eb) - z(eb - h)) / h;
    const double right = (z(eb + h) - z(eb)) / h;
    kink = std::max(kink, std::abs(right - left));
  }
  s.add("assembly", "zeta derivative jump at thresholds", kink, 1e-6);

  std::mt19937_64 rng(5);
  double econs = 0.0;
  for (const SpacetimePoint& q : sample_box(rng, 500, -50.0, 0.0, -200.0, 200.0)) {
    for (double nu : {1e-2, 1e-3, 1e-4}) {
      const double E = inner_distances(q.t, q.x, nu, c).E;
      const double ref = euclidean_distance({std::sqrt(nu) * q.t, std::pow(nu, 0.75) * q.x}) / std::sqrt(nu);
      econs = std::max(econs, std::abs(E - ref) / std::max(ref, 1e-300));
    }
  }
  s.add("assembly", "inner distance E vs scaled e (relative)", econs, 1e-14);

  // continuity of the glued solution across both cutoff radii
  const InnerBox box = required_inner_box(mc);
  std::vector<double> times;
  for (double T = std::floor(box.T_lo) - 1.0; T <= 0.0; T += 0.05) times.push_back(T);
  times.push_back(0.0);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const double X = std::ceil(box.X_max) + 8.0;
  const InnerProfile U = inner_profile_U(-16.0, X, Grid1D::with_max_spacing(-X, X, 0.1), c, times);
  InviscidSolution sol;
  double jump = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double ang = -3.14159 * (k + 0.5) / 64.0;
    for (double eb : {0.25 * r, 0.5 * r}) {
      auto at = [&](double e) {
        return matched_solution(mc, {e * std::sin(ang), e * std::cos(ang)}, U, sol)[0];
      };
      jump = std::max(jump, std::abs(at(eb * (1 + 1e-13)) - at(eb * (1 - 1e-13))));
    }
  }
  s.add("assembly", "glued solution jump across cutoff radii", jump, 1e-10);
}

void analysis_checks(Suite& s) {
  const std::size_t n = 1601;
  std::vector<double> x(n), f(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
    f[i] = std::cbrt(x[i]) + 0.3 * std::sin(7.0 * x[i]);
  }
  double worst = 0.0, shrink = 0.0;
  for (double alpha : {0.25, 1.0 / 3.0, 0.5}) {
    double full = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        full = std::max(full, std::abs(f[j] - f[i]) / std::pow(x[j] - x[i], alpha));
      }
    }
    const double dy = holder_seminorm(x, f, alpha, -1.0, 1.0).seminorm;
    worst = std::max(worst, std::max(0.0, 1.0 - dy / full) + std::max(0.0, dy / full - 1.0));
    const double small = holder_seminorm(x, f, alpha, -0.5, 0.5).seminorm;
    shrink = std::max(shrink, small - dy);
  }
  s.add("analysis", "dyadic vs full-scan seminorm (relative gap)", worst, 0.05);
  s.add("analysis", "seminorm growth under window shrinkage", shrink, 0.0);

  double fit = 0.0;
  for (double slope : {0.25, 0.5, 1.0, 2.0}) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k <= 8; ++k) {
      const double nu = std::pow(10.0, -0.5 * k);
      pts.emplace_back(nu, 3.0 * std::pow(nu, slope));
    }
    fit = std::max(fit, std::abs(fit_rate(pts).slope - slope));
  }
  s.add("analysis", "fit_rate slope error on exact power laws", fit, 1e-12);
}

}  // namespace

std::vector<AuditCheck> run_audit() {
  Suite s;
  profile_checks(s);
  model_checks(s);
  hyperbolic_checks(s);
  parabolic_checks(s);
  assembly_checks(s);
  analysis_checks(s);
  return s.take();
}

}  // namespace viscid::cli
