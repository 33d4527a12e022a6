#pragma once

// Built-in 1D conservation laws
//
//     d_t psi + d_x f(psi) = nu d_x [B(psi) d_x psi]
//
// written in a basis where A(0) = Df(0) is diagonal and component 0 is the
// shocking component sigma with A_00(0) = 0.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viscid/profile.hpp"

namespace viscid {

inline constexpr std::size_t kMaxComponents = 2;

using StateVector = std::vector<double>;

/// Dense row-major n x n matrix for n <= kMaxComponents.
struct SmallMatrix {
  std::size_t n = 0;
  std::array<double, kMaxComponents * kMaxComponents> a{};

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

enum class SystemKind {
  /// f = k psi^2 / 2, B = b_diff, with k = -a from the cubic.
  burgers,
  /// (v, w): f = (v^2/2, -w), B = [[1, 0], [b_cross, 0]].
  burgers_transport,
};

class SystemSpec {
 public:
  [[nodiscard]] SystemKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t n_components() const noexcept { return n_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] const CubicParams& cubic() const noexcept { return cubic_; }
  /// max_I |lambda_I(0)|.
  [[nodiscard]] double wave_speed_bound() const noexcept { return wave_speed_bound_; }
  [[nodiscard]] double b_cross() const noexcept { return b_cross_; }
  /// Coefficient of psi^2/2 in the shocking flux.
  [[nodiscard]] double burgers_coefficient() const noexcept { return cubic_.burgers_coefficient(); }

  /// True when B_kk(0) > 0, i.e. the component carries its own diffusion.
  [[nodiscard]] bool diffused(std::size_t k) const;

  void flux(std::span<const double> psi, std::span<double> out) const;
  void jacobian(std::span<const double> psi, SmallMatrix& out) const;
  void diffusion(std::span<const double> psi, SmallMatrix& out) const;

  [[nodiscard]] StateVector flux(const StateVector& psi) const;
  [[nodiscard]] SmallMatrix jacobian(const StateVector& psi) const;
  [[nodiscard]] SmallMatrix diffusion(const StateVector& psi) const;

 private:
  friend SystemSpec make_burgers();
  friend SystemSpec make_scaled_burgers(const CubicParams& c);
  friend SystemSpec make_burgers_transport(double b_cross);

  void check_size(std::size_t n) const;

  SystemKind kind_ = SystemKind::burgers;
  std::size_t n_ = 1;
  std::string label_;
  CubicParams cubic_;
  double wave_speed_bound_ = 0.0;
  double b_cross_ = 0.0;
};

/// Viscous Burgers, d_t psi + psi d_x psi = nu d_x^2 psi, label "burgers".
[[nodiscard]] SystemSpec make_burgers();

/// Burgers normalised to an arbitrary cubic: f = (-a) psi^2/2, B = b_diff.
[[nodiscard]] SystemSpec make_scaled_burgers(const CubicParams& c);

/// Burgers coupled to a left-moving transport through cross diffusion,
///   d_t v + v d_x v = nu d_x^2 v,
///   d_t w - d_x w   = nu b_cross d_x^2 v.
/// Label "burgers-transport".
[[nodiscard]] SystemSpec make_burgers_transport(double b_cross);

/// Looks up a built-in by label. Throws ConfigError on unknown labels.
[[nodiscard]] SystemSpec make_system(std::string_view label, double b_cross = 1.0);

struct SystemEval {
  StateVector flux;
  SmallMatrix jacobian;
  SmallMatrix diffusion;
};

/// Evaluates flux, Jacobian and diffusion at psi. Throws ConfigError on size mismatch.
[[nodiscard]] SystemEval eval_system(const SystemSpec& s, const StateVector& psi);

}  // namespace viscid
