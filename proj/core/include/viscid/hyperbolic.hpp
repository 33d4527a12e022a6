#pragma once

// Inviscid objects for self-similar shocking data: the inviscid solution,
// the eikonal function, the first outer corrector and the (1,0) grid term.

#include <span>
#include <vector>

#include "viscid/grid.hpp"
#include "viscid/model.hpp"
#include "viscid/profile.hpp"

namespace viscid {

/// Initial profile of the nonshocking component w at t0.
struct NonshockData {
  enum class Shape { zero, sine };
  Shape shape = Shape::sine;
  double amplitude = 1.0;
  double wavenumber = 1.0;

  [[nodiscard]] double operator()(double x) const;
};

struct InviscidSolution {
  SystemSpec system = make_burgers();
  double t0 = -1.0;
  NonshockData nonshock{};

  /// Throws ConfigError unless t0 < 0.
  void validate() const;
};

/// psi^(0)(p). Component 0 is the cubic profile; for two components the
/// second is the t0 profile transported with speed -1. Throws DomainError
/// outside [t0, 0].
[[nodiscard]] StateVector inviscid_eval(const InviscidSolution& sol, SpacetimePoint p);

/// Shocking characteristic speed lambda_1(psi^(0)) at p.
[[nodiscard]] double shocking_speed(const InviscidSolution& sol, SpacetimePoint p);

struct EikonalField {
  Grid1D grid;
  std::vector<double> times;
  /// values[k * grid.n_cells + i] = u(times[k], x_i).
  std::vector<double> values;
  double t0 = -1.0;
  /// Offset chosen so that u(0, 0) = 0.
  double offset = 0.0;

  [[nodiscard]] double at(std::size_t time_index, std::size_t cell) const {
    return values[time_index * grid.n_cells + cell];
  }
};

/// Foot at t0 of the shocking characteristic through p, traced backward with
/// an adaptive Dormand-Prince integrator.
[[nodiscard]] double trace_characteristic_foot(const InviscidSolution& sol, SpacetimePoint p,
                                               double tol = 1e-9);

/// Eikonal function u = foot - c on grid x times, with c the foot of the
/// characteristic through the origin.
[[nodiscard]] EikonalField eikonal_compute(const InviscidSolution& sol, const Grid1D& grid,
                                           std::span<const double> times, double tol = 1e-9);

enum class QuadratureMethod {
  closed_form,
  /// Adaptive Gauss-Kronrod along the characteristic.
  adaptive,
};

/// First outer corrector psi^(1) (shocking component, Burgers only): zero at
/// t0 and solving d_t psi1 + d_x(A(psi0) psi1) = B d_x^2 psi0. Returns NaN at
/// the origin.
[[nodiscard]] double outer_corrector_psi1(const InviscidSolution& sol, SpacetimePoint p,
                                          QuadratureMethod method = QuadratureMethod::closed_form);

/// (1,0) grid term: the same linear equation with zero data at t = -infinity.
/// (-3)-homogeneous. Throws DomainError at the origin.
[[nodiscard]] double grid_sigma10(SpacetimePoint p, const CubicParams& c,
                                  QuadratureMethod method = QuadratureMethod::closed_form);

}  // namespace viscid
