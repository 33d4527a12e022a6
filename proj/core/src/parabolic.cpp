#include "viscid/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "viscid/errors.hpp"
#include "viscid/hyperbolic.hpp"

namespace viscid {

namespace {

constexpr std::size_t kGhost = 2;

// Ghost-padded component arrays: cell i lives at index i + kGhost.
using Padded = std::vector<std::vector<double>>;

struct FaceFluxes {
  // Total flux (advective minus diffusive) through the left and right boundary faces.
  double left[kMaxComponents] = {};
  double right[kMaxComponents] = {};
};

void fill_ghosts(const ViscousRunConfig& cfg, double t, Padded& u) {
  const Grid1D& g = cfg.grid;
  const std::size_t n = g.n_cells;
  for (std::size_t j = 0; j < kGhost; ++j) {
    const double xl = g.x_min - (static_cast<double>(j) + 0.5) * g.dx;
    const double xr = g.x_max() + (static_cast<double>(j) + 0.5) * g.dx;
    const StateVector vl = cfg.data({t, xl});
    const StateVector vr = cfg.data({t, xr});
    for (std::size_t c = 0; c < u.size(); ++c) {
      u[c][kGhost - 1 - j] = vl[c];
      u[c][n + kGhost + j] = vr[c];
    }
  }
}

// Centred flux k u^2/2 plus diffusion nu*bd*u_x for a Burgers-type component.
// Writes total face fluxes into face[0..n].
void burgers_faces(const std::vector<double>& u, std::size_t n, double k, double nu_bd, double dx,
                   bool with_flux, std::vector<double>& face) {
  const double inv_dx = 1.0 / dx;
  const double half_k = with_flux ? 0.25 * k : 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double ul = u[j + kGhost - 1];
    const double ur = u[j + kGhost];
    face[j] = half_k * (ul * ul + ur * ur) - nu_bd * (ur - ul) * inv_dx;
  }
}

// Left-moving transport f = -w with third-order upwind-biased reconstruction
// (upwind side is the right cell) and cross diffusion nu*b*v_x.
void transport_faces(const std::vector<double>& w, const std::vector<double>& v, std::size_t n,
                     double nu_b, double dx, bool with_flux, std::vector<double>& face) {
  const double inv_dx = 1.0 / dx;
  const double sixth = with_flux ? 1.0 / 6.0 : 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t l = j + kGhost - 1;
    const double fl = -w[l];
    const double fr = -w[l + 1];
    const double frr = -w[l + 2];
    face[j] = sixth * (2.0 * fl + 5.0 * fr - frr) - nu_b * (v[l + 1] - v[l]) * inv_dx;
  }
}

class Stepper {
 public:
  explicit Stepper(const ViscousRunConfig& cfg)
      : cfg_(cfg), n_(cfg.grid.n_cells), nc_(cfg.system.n_components()), face_(nc_) {
    for (auto& f : face_) f.resize(n_ + 1);
  }

  // rhs[c][i] = -(G_{i+1/2} - G_{i-1/2}) / dx for interior cells; u must have ghosts filled.
  FaceFluxes rhs(const Padded& u, Padded& out) {
    const double dx = cfg_.grid.dx;
    const double nu = cfg_.nu;
    const bool with_flux = !cfg_.disable_flux;
    const SystemSpec& s = cfg_.system;
    switch (s.kind()) {
      case SystemKind::burgers:
        burgers_faces(u[0], n_, s.burgers_coefficient(), nu * s.cubic().b_diff, dx, with_flux,
                      face_[0]);
        break;
      case SystemKind::burgers_transport:
        burgers_faces(u[0], n_, 1.0, nu * s.cubic().b_diff, dx, with_flux, face_[0]);
        transport_faces(u[1], u[0], n_, nu * s.b_cross(), dx, with_flux, face_[1]);
        break;
    }
    FaceFluxes bf;
    const double inv_dx = 1.0 / dx;
    for (std::size_t c = 0; c < nc_; ++c) {
      const auto& f = face_[c];
      auto& o = out[c];
      for (std::size_t i = 0; i < n_; ++i) o[i] = -(f[i + 1] - f[i]) * inv_dx;
      bf.left[c] = f[0];
      bf.right[c] = f[n_];
    }
    return bf;
  }

 private:
  const ViscousRunConfig& cfg_;
  std::size_t n_;
  std::size_t nc_;
  std::vector<std::vector<double>> face_;
};

double max_speed(const ViscousRunConfig& cfg, std::span<const double> sigma) {
  if (cfg.disable_flux) return 0.0;
  const SystemSpec& s = cfg.system;
  double m = 0.0;
  for (double v : sigma) m = std::max(m, std::abs(v));
  if (s.kind() == SystemKind::burgers) m *= std::abs(s.burgers_coefficient());
  if (s.kind() == SystemKind::burgers_transport) m = std::max(m, 1.0);
  return m;
}

double step_for_speed(const ViscousRunConfig& cfg, double speed) {
  const double dx = cfg.grid.dx;
  const double dt_diff = cfg.cfl_diff * dx * dx / (2.0 * cfg.nu * cfg.system.cubic().b_diff);
  return speed > 0.0 ? std::min(cfg.cfl_adv * dx / speed, dt_diff) : dt_diff;
}

void require_finite(const Padded& u, std::size_t n, double t, double nu) {
  for (std::size_t c = 0; c < u.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(u[c][i + kGhost])) {
        throw InstabilityError("non-finite value in component " + std::to_string(c) + " cell " +
                               std::to_string(i) + " at t = " + std::to_string(t) +
                               " (nu = " + std::to_string(nu) + ")");
      }
    }
  }
}

}  // namespace

void ViscousRunConfig::validate() const {
  grid.validate();
  system.cubic().validate();
  if (!(nu > 0.0)) throw ConfigError("viscous run: nu must be positive (got " + std::to_string(nu) + ")");
  if (!(t0 < t_end)) throw ConfigError("viscous run: need t0 < t_end");
  if (t_end > 0.0) throw ConfigError("viscous run: t_end must not exceed the preshock time 0");
  if (!(cfl_adv > 0.0 && cfl_adv <= 1.0)) throw ConfigError("viscous run: cfl_adv must lie in (0, 1]");
  if (!(cfl_diff > 0.0 && cfl_diff <= 1.0)) throw ConfigError("viscous run: cfl_diff must lie in (0, 1]");
  if (!data) throw ConfigError("viscous run: missing initial/boundary data");
  const double max_dx = 0.25 * std::pow(nu, 0.75);
  if (grid.dx > max_dx * (1.0 + 1e-12)) {
    throw ConfigError("viscous run: dx = " + std::to_string(grid.dx) +
                      " exceeds 0.25 nu^{3/4} = " + std::to_string(max_dx) + " for nu = " +
                      std::to_string(nu));
  }
  if (measure_undiffused && grid.dx > 0.1 * nu * (1.0 + 1e-12)) {
    throw ConfigError("viscous run: dx = " + std::to_string(grid.dx) +
                      " exceeds 0.1 nu = " + std::to_string(0.1 * nu) +
                      " required for undiffused components");
  }
  for (double ts : store_times) {
    if (ts < t0 || ts > t_end) {
      throw ConfigError("viscous run: store time " + std::to_string(ts) + " outside [t0, t_end]");
    }
  }
}

double stable_time_step(const ViscousRunConfig& cfg, std::span<const std::vector<double>> components) {
  if (components.empty()) throw ConfigError("stable_time_step: no components");
  return step_for_speed(cfg, max_speed(cfg, components[0]));
}

FieldSlab run_viscous(const ViscousRunConfig& cfg) {
  cfg.validate();
  const Grid1D& g = cfg.grid;
  const std::size_t n = g.n_cells;
  const std::size_t nc = cfg.system.n_components();

  Padded u(nc, std::vector<double>(n + 2 * kGhost, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const StateVector v = cfg.data({cfg.t0, g.center(i)});
    if (v.size() != nc) throw ConfigError("viscous run: data has the wrong number of components");
    for (std::size_t c = 0; c < nc; ++c) u[c][i + kGhost] = v[c];
  }
  Padded u1 = u;
  Padded u2 = u;
  Padded rhs(nc, std::vector<double>(n, 0.0));
  Stepper stepper(cfg);

  FieldSlab slab;
  slab.grid = g;
  slab.n_components = nc;
  slab.requested_times = cfg.store_times;
  std::vector<double> pending = cfg.store_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_store = 0;

  RunStats& st = slab.stats;
  st.initial_integral.assign(nc, 0.0);
  st.final_integral.assign(nc, 0.0);
  st.boundary_inflow.assign(nc, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += u[c][i + kGhost];
    st.initial_integral[c] = sum * g.dx;
  }

  auto store = [&](double t) {
    slab.times.push_back(t);
    for (std::size_t c = 0; c < nc; ++c) {
      slab.data.insert(slab.data.end(), u[c].begin() + kGhost, u[c].begin() + kGhost + n);
    }
  };

  double t = cfg.t0;
  st.dt_min = std::numeric_limits<double>::infinity();
  while (true) {
    double dt = step_for_speed(
        cfg, max_speed(cfg, std::span<const double>(u[0].data() + kGhost, n)));
    const double remaining = cfg.t_end - t;
    const bool last = dt >= remaining;
    if (last) dt = remaining;

    // Snapshots requested in [t, t + dt) are taken at whichever end is nearer.
    while (next_store < pending.size() && pending[next_store] < t + dt &&
           pending[next_store] - t <= (t + dt) - pending[next_store]) {
      store(t);
      ++next_store;
    }
    if (dt <= 0.0) break;

    fill_ghosts(cfg, t, u);
    const FaceFluxes b1 = stepper.rhs(u, rhs);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < n; ++i) u1[c][i + kGhost] = u[c][i + kGhost] + dt * rhs[c][i];
    }
    const double t_next = last ? cfg.t_end : t + dt;
    fill_ghosts(cfg, t_next, u1);
    const FaceFluxes b2 = stepper.rhs(u1, rhs);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        u[c][i + kGhost] = 0.5 * (u[c][i + kGhost] + u1[c][i + kGhost] + dt * rhs[c][i]);
      }
      st.boundary_inflow[c] += 0.5 * dt * ((b1.left[c] - b1.right[c]) + (b2.left[c] - b2.right[c]));
    }
    t = t_next;
    ++st.steps;
    st.dt_min = std::min(st.dt_min, dt);
    st.dt_max = std::max(st.dt_max, dt);
    require_finite(u, n, t, cfg.nu);
    if (last) break;
  }
  while (next_store < pending.size()) {
    store(t);
    ++next_store;
  }
  for (std::size_t c = 0; c < nc; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += u[c][i + kGhost];
    st.final_integral[c] = sum * g.dx;
  }
  if (st.steps == 0) st.dt_min = 0.0;
  return slab;
}

std::size_t FieldSlab::nearest_time(double t) const {
  if (times.empty()) throw CoverageError("slab has no stored times");
  std::size_t best = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
  }
  return best;
}

double FieldSlab::interpolate_x(std::size_t k, std::size_t c, double x) const {
  const double s = (x - grid.x_min) / grid.dx - 0.5;
  const double last = static_cast<double>(grid.n_cells - 1);
  if (!(s >= -1e-9 && s <= last + 1e-9)) {
    throw CoverageError("x = " + std::to_string(x) + " outside the slab's cell centres");
  }
  const double sc = std::clamp(s, 0.0, last);
  auto i = static_cast<std::size_t>(std::floor(sc));
  if (i >= grid.n_cells - 1) i = grid.n_cells - 2;
  const double w = sc - static_cast<double>(i);
  const auto row = component(k, c);
  return (1.0 - w) * row[i] + w * row[i + 1];
}

double FieldSlab::interpolate(double t, std::size_t c, double x) const {
  if (times.empty()) throw CoverageError("slab has no stored times");
  if (t < times.front() - 1e-12 || t > times.back() + 1e-12) {
    throw CoverageError("t = " + std::to_string(t) + " outside the slab's stored times");
  }
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) --it;
  auto k1 = static_cast<std::size_t>(it - times.begin());
  if (times[k1] == t || k1 == 0) return interpolate_x(k1, c, x);
  const std::size_t k0 = k1 - 1;
  const double w = (t - times[k0]) / (times[k1] - times[k0]);
  return (1.0 - w) * interpolate_x(k0, c, x) + w * interpolate_x(k1, c, x);
}

bool FieldSlab::covers(double t_lo, double t_hi, double x_lo, double x_hi) const {
  if (times.empty()) return false;
  return t_lo >= times.front() - 1e-12 && t_hi <= times.back() + 1e-12 &&
         x_lo >= grid.center(0) - 1e-12 && x_hi <= grid.center(grid.n_cells - 1) + 1e-12;
}

InnerState blowup(SpacetimePoint p, const StateVector& psi, double nu) {
  const double s = std::pow(nu, -0.25);
  InnerState out{p.t / std::sqrt(nu), p.x * s * s * s, psi};
  for (double& v : out.Psi) v *= s;
  return out;
}

OuterState blowdown(const InnerState& s, double nu) {
  const double q = std::pow(nu, 0.25);
  OuterState out{{s.T * std::sqrt(nu), s.X * q * q * q}, s.Psi};
  for (double& v : out.psi) v *= q;
  return out;
}

InnerProfile::InnerProfile(FieldSlab slab, CubicParams cubic, double T_min, double X_box)
    : slab_(std::move(slab)), cubic_(cubic), T_min_(T_min), X_box_(X_box) {}

double InnerProfile::operator()(double T, double X) const { return slab_.interpolate(T, 0, X); }

bool InnerProfile::covers(double T_lo, double T_hi, double X_lo, double X_hi) const {
  return slab_.covers(T_lo, T_hi, X_lo, X_hi);
}

InnerProfile inner_profile_U(double T_min, double X_box, const Grid1D& grid, const CubicParams& c,
                             std::span<const double> store_times, double cfl_adv, double cfl_diff) {
  if (!(T_min <= -4.0)) throw ConfigError("inner profile: T_min must be <= -4");
  if (!(X_box >= 4.0)) throw ConfigError("inner profile: X_box must be >= 4");
  const double tol = 1e-9 * X_box;
  if (std::abs(grid.x_min + X_box) > tol || std::abs(grid.x_max() - X_box) > tol) {
    throw ConfigError("inner profile: grid must cover [-X_box, X_box]");
  }
  ViscousRunConfig cfg;
  cfg.system = make_scaled_burgers(c);
  cfg.nu = 1.0;
  cfg.t0 = T_min;
  cfg.t_end = 0.0;
  cfg.grid = grid;
  cfg.cfl_adv = cfl_adv;
  cfg.cfl_diff = cfl_diff;
  cfg.data = [c](SpacetimePoint p) { return StateVector{cubic_root(p, c)}; };
  cfg.store_times.assign(store_times.begin(), store_times.end());
  return InnerProfile(run_viscous(cfg), c, T_min, X_box);
}

double grid_scaling_check(int k, int l, double nu, const ScalarField& outer_term,
                          const ScalarField& inner_term, std::span<const SpacetimePoint> inner_points) {
  const bool supported = (k == 0 && l == 0) || (k == 1 && l == 0);
  if (!supported) {
    throw ConfigError("grid_scaling_check: unsupported (k, l) = (" + std::to_string(k) + ", " +
                      std::to_string(l) + ")");
  }
  if (!(nu > 0.0)) throw ConfigError("grid_scaling_check: nu must be positive");
  const double weight = std::pow(nu, static_cast<double>(k) - static_cast<double>(l + 1) / 4.0);
  const double st = std::sqrt(nu);
  const double sx = std::pow(nu, 0.75);
  double worst = 0.0;
  for (const auto& q : inner_points) {
    const double scaled = weight * outer_term({st * q.t, sx * q.x});
    const double direct = inner_term(q);
    worst = std::max(worst, std::abs(scaled - direct) / std::max(1.0, std::abs(direct)));
  }
  return worst;
}

double grid_scaling_check(int k, int l, double nu, const CubicParams& c,
                          std::span<const SpacetimePoint> inner_points) {
  ScalarField term;
  if (k == 0 && l == 0) {
    term = [c](SpacetimePoint p) { return cubic_root(p, c); };
  } else if (k == 1 && l == 0) {
    term = [c](SpacetimePoint p) { return grid_sigma10(p, c); };
  } else {
    throw ConfigError("grid_scaling_check: unsupported (k, l)");
  }
  return grid_scaling_check(k, l, nu, term, term, inner_points);
}

}  // namespace viscid
