#include "viscid/hyperbolic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "viscid/errors.hpp"

namespace viscid {

namespace {

constexpr double kQuadTol = 1e-9;
constexpr unsigned kQuadMaxDepth = 30;
// Start of the truncated integral from past infinity; the tail is added in closed form.
constexpr double kPastInfinity = -1e6;

void require_window(const InviscidSolution& sol, SpacetimePoint p) {
  if (p.t < sol.t0 || p.t > 0.0) {
    throw DomainError("time " + std::to_string(p.t) + " outside the window [" +
                      std::to_string(sol.t0) + ", 0]");
  }
}

// m along the shocking characteristic on which u == u0.
double m_along(double s, double u0, const CubicParams& c) {
  return 1.0 / (std::abs(s) + 3.0 * (c.b / c.a) * u0 * u0);
}

// Forcing coefficient: B d_x^2 u = kappa * u * m^3.
double forcing_coefficient(const CubicParams& c) {
  return -6.0 * c.b_diff * c.b / (c.a * c.a * c.a);
}

// psi1 / m integrated along the characteristic through p from s_start (where
// the corrector vanishes) to p.t, using pointwise profile evaluations.
double integrate_along_characteristic(SpacetimePoint p, double u0, double s_start,
                                      const CubicParams& c) {
  auto integrand = [&](double s) {
    // The characteristic is x(s) = a|s| u0 + b u0^3, on which u == u0.
    const SpacetimePoint q{s, c.a * std::abs(s) * u0 + c.b * u0 * u0 * u0};
    const ProfileEval ev = profile_eval(q, c);
    return ev.d * ev.d * c.b_diff * profile_d2u_dx2(q, c);
  };
  if (p.t == s_start) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, s_start, p.t, kQuadMaxDepth, kQuadTol, &err);
}

}  // namespace

double NonshockData::operator()(double x) const {
  switch (shape) {
    case Shape::zero:
      return 0.0;
    case Shape::sine:
      return amplitude * std::sin(wavenumber * x);
  }
  return 0.0;
}

void InviscidSolution::validate() const {
  if (!(t0 < 0.0)) throw ConfigError("inviscid solution: t0 must be negative");
  system.cubic().validate();
}

StateVector inviscid_eval(const InviscidSolution& sol, SpacetimePoint p) {
  require_window(sol, p);
  StateVector out(sol.system.n_components(), 0.0);
  out[0] = cubic_root(p, sol.system.cubic());
  if (sol.system.kind() == SystemKind::burgers_transport) {
    out[1] = sol.nonshock(p.x + (p.t - sol.t0));
  }
  return out;
}

double shocking_speed(const InviscidSolution& sol, SpacetimePoint p) {
  return sol.system.burgers_coefficient() * cubic_root(p, sol.system.cubic());
}

double trace_characteristic_foot(const InviscidSolution& sol, SpacetimePoint p, double tol) {
  require_window(sol, p);
  namespace odeint = boost::numeric::odeint;
  using State = double;
  auto rhs = [&](const State& x, State& dxdt, double s) {
    dxdt = shocking_speed(sol, {std::min(s, 0.0), x});
  };
  State x = p.x;
  if (p.t == sol.t0) return x;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(0.01 * tol, 0.01 * tol);
  const double span = p.t - sol.t0;
  try {
    odeint::integrate_adaptive(stepper, rhs, x, p.t, sol.t0, -1e-3 * span);
  } catch (const odeint::step_adjustment_error& e) {
    throw ConvergenceError(std::string("characteristic tracer: ") + e.what());
  }
  if (!std::isfinite(x)) throw ConvergenceError("characteristic tracer produced a non-finite foot");
  return x;
}

EikonalField eikonal_compute(const InviscidSolution& sol, const Grid1D& grid,
                             std::span<const double> times, double tol) {
  grid.validate();
  EikonalField field;
  field.grid = grid;
  field.t0 = sol.t0;
  field.times.assign(times.begin(), times.end());
  field.offset = trace_characteristic_foot(sol, {0.0, 0.0}, tol);
  field.values.resize(times.size() * grid.n_cells);
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
      field.values[k * grid.n_cells + i] =
          trace_characteristic_foot(sol, {times[k], grid.center(i)}, tol) - field.offset;
    }
  }
  return field;
}

double outer_corrector_psi1(const InviscidSolution& sol, SpacetimePoint p,
                            QuadratureMethod method) {
  require_window(sol, p);
  if (sol.system.kind() != SystemKind::burgers) {
    throw ConfigError("outer_corrector_psi1 is implemented for scalar Burgers only");
  }
  if (p.t == 0.0 && p.x == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const CubicParams& c = sol.system.cubic();
  const ProfileEval ev = profile_eval(p, c);
  if (method == QuadratureMethod::closed_form) {
    const double m0 = m_along(sol.t0, ev.u, c);
    return forcing_coefficient(c) * ev.u * ev.m * (ev.m - m0);
  }
  return ev.m * integrate_along_characteristic(p, ev.u, sol.t0, c);
}

double grid_sigma10(SpacetimePoint p, const CubicParams& c, QuadratureMethod method) {
  if (p.t > 0.0) throw DomainError("grid_sigma10: t > 0");
  if (p.t == 0.0 && p.x == 0.0) throw DomainError("grid_sigma10: singular at the origin");
  const ProfileEval ev = profile_eval(p, c);
  if (method == QuadratureMethod::closed_form) {
    return forcing_coefficient(c) * ev.u * ev.m * ev.m;
  }
  // Tail: integral of kappa u0 m^2 over (-inf, s_start] is kappa u0 m(s_start).
  const double tail = forcing_coefficient(c) * ev.u * m_along(kPastInfinity, ev.u, c);
  return ev.m * (tail + integrate_along_characteristic(p, ev.u, kPastInfinity, c));
}

}  // namespace viscid
