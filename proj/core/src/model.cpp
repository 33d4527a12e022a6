#include "viscid/model.hpp"

#include "viscid/errors.hpp"

namespace viscid {

SystemSpec make_burgers() {
  SystemSpec s;
  s.kind_ = SystemKind::burgers;
  s.n_ = 1;
  s.label_ = "burgers";
  s.cubic_ = CubicParams{};
  s.wave_speed_bound_ = 0.0;
  return s;
}

SystemSpec make_scaled_burgers(const CubicParams& c) {
  c.validate();
  SystemSpec s = make_burgers();
  s.cubic_ = c;
  return s;
}

SystemSpec make_burgers_transport(double b_cross) {
  SystemSpec s;
  s.kind_ = SystemKind::burgers_transport;
  s.n_ = 2;
  s.label_ = "burgers-transport";
  s.cubic_ = CubicParams{};
  s.wave_speed_bound_ = 1.0;
  s.b_cross_ = b_cross;
  return s;
}

SystemSpec make_system(std::string_view label, double b_cross) {
  if (label == "burgers") return make_burgers();
  if (label == "burgers-transport") return make_burgers_transport(b_cross);
  throw ConfigError("unknown system label: " + std::string(label));
}

void SystemSpec::check_size(std::size_t n) const {
  if (n != n_) {
    throw ConfigError("state has " + std::to_string(n) + " components, system " + label_ +
                      " expects " + std::to_string(n_));
  }
}

bool SystemSpec::diffused(std::size_t k) const {
  if (k >= n_) throw ConfigError("component index out of range");
  return k == 0;
}

void SystemSpec::flux(std::span<const double> psi, std::span<double> out) const {
  check_size(psi.size());
  check_size(out.size());
  switch (kind_) {
    case SystemKind::burgers:
      out[0] = 0.5 * burgers_coefficient() * psi[0] * psi[0];
      break;
    case SystemKind::burgers_transport:
      out[0] = 0.5 * psi[0] * psi[0];
      out[1] = -psi[1];
      break;
  }
}

void SystemSpec::jacobian(std::span<const double> psi, SmallMatrix& out) const {
  check_size(psi.size());
  out = SmallMatrix{};
  out.n = n_;
  switch (kind_) {
    case SystemKind::burgers:
      out(0, 0) = burgers_coefficient() * psi[0];
      break;
    case SystemKind::burgers_transport:
      out(0, 0) = psi[0];
      out(1, 1) = -1.0;
      break;
  }
}

void SystemSpec::diffusion(std::span<const double> psi, SmallMatrix& out) const {
  check_size(psi.size());
  out = SmallMatrix{};
  out.n = n_;
  switch (kind_) {
    case SystemKind::burgers:
      out(0, 0) = cubic_.b_diff;
      break;
    case SystemKind::burgers_transport:
      out(0, 0) = cubic_.b_diff;
      out(1, 0) = b_cross_;
      break;
  }
}

StateVector SystemSpec::flux(const StateVector& psi) const {
  StateVector out(n_);
  flux(std::span<const double>(psi), std::span<double>(out));
  return out;
}

SmallMatrix SystemSpec::jacobian(const StateVector& psi) const {
  SmallMatrix m;
  jacobian(std::span<const double>(psi), m);
  return m;
}

SmallMatrix SystemSpec::diffusion(const StateVector& psi) const {
  SmallMatrix m;
  diffusion(std::span<const double>(psi), m);
  return m;
}

SystemEval eval_system(const SystemSpec& s, const StateVector& psi) {
  return {s.flux(psi), s.jacobian(psi), s.diffusion(psi)};
}

}  // namespace viscid
