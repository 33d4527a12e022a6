#include "viscid/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viscid/errors.hpp"

namespace viscid {

void CubicParams::validate() const {
  if (!(a != 0.0 && b != 0.0 && a * b > 0.0)) {
    throw ConfigError("cubic params: need a != 0, b != 0 and a*b > 0");
  }
  if (!(b_diff > 0.0)) {
    throw ConfigError("cubic params: b_diff must be positive");
  }
}

namespace {

void require_past(SpacetimePoint p) {
  if (p.t > 0.0) {
    throw DomainError("profile evaluated at t = " + std::to_string(p.t) + " > 0");
  }
}

// Root of u^3 + p u = q for p >= 0, q >= 0. The result is nonnegative.
double depressed_root(double p, double q) {
  if (q == 0.0) return 0.0;

  // Cardano seed. With p >= 0 the discriminant is nonnegative and the
  // second cube root argument is negative or zero.
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double sqrt_disc = std::sqrt(half_q * half_q + third_p * third_p * third_p);
  const double s1 = std::cbrt(half_q + sqrt_disc);
  // q/2 - sqrt(disc) cancels badly when p is large; use the conjugate form.
  const double s2 = (s1 != 0.0) ? -third_p / s1 : 0.0;
  double u = s1 + s2;

  // Bracket: the root is bounded by both q^{1/3} and q/p.
  double lo = 0.0;
  double hi = std::cbrt(q);
  if (p > 0.0) hi = std::min(hi, q / p);
  hi = hi * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()) +
       std::numeric_limits<double>::min();
  if (!(u >= lo && u <= hi)) u = 0.5 * (lo + hi);

  constexpr int kMaxIter = 200;
  for (int it = 0; it < kMaxIter; ++it) {
    const double g = u * (u * u + p) - q;
    if (g == 0.0) return u;
    if (g > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    const double dg = 3.0 * u * u + p;
    double next = u - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(u) ||
        next == lo || next == hi) {
      return next;
    }
    u = next;
  }
  throw ConvergenceError("cubic_root: safeguarded Newton did not converge");
}

}  // namespace

double cubic_root(SpacetimePoint p, const CubicParams& c) {
  require_past(p);
  // b u^3 + a|t| u = x  <=>  u^3 + (a/b)|t| u = x/b with a/b > 0.
  const double coef = (c.a / c.b) * std::abs(p.t);
  const double rhs = p.x / c.b;
  const double r = depressed_root(coef, std::abs(rhs));
  return std::signbit(rhs) ? -r : r;
}

ProfileEval profile_eval(SpacetimePoint p, const CubicParams& c) {
  ProfileEval out;
  out.u = cubic_root(p, c);
  const double d2 = std::abs(p.t) + 3.0 * (c.b / c.a) * out.u * out.u;
  out.m = d2 > 0.0 ? 1.0 / d2 : kInfinity;
  out.d = std::sqrt(d2);
  out.e = euclidean_distance(p);
  return out;
}

ProfileGradient profile_gradient(SpacetimePoint p, const CubicParams& c) {
  if (p.t == 0.0 && p.x == 0.0) {
    throw DomainError("profile_gradient: singular at the origin");
  }
  const ProfileEval ev = profile_eval(p, c);
  return {ev.m / c.a, ev.u * ev.m};
}

double profile_d2u_dx2(SpacetimePoint p, const CubicParams& c) {
  if (p.t == 0.0 && p.x == 0.0) {
    throw DomainError("profile_d2u_dx2: singular at the origin");
  }
  const ProfileEval ev = profile_eval(p, c);
  return -6.0 * c.b / (c.a * c.a * c.a) * ev.u * ev.m * ev.m * ev.m;
}

double homogeneity_defect(double r, double lambda, std::span<const SpacetimePoint> points,
                          const ScalarField& f) {
  if (!(lambda > 0.0)) throw DomainError("homogeneity_defect: lambda must be positive");
  const double l2 = lambda * lambda;
  const double l3 = l2 * lambda;
  const double lr = std::pow(lambda, r);
  double worst = 0.0;
  for (const auto& p : points) {
    const double scaled = f({l2 * p.t, l3 * p.x});
    const double expected = lr * f(p);
    worst = std::max(worst, std::abs(scaled - expected) / std::max(1.0, std::abs(expected)));
  }
  return worst;
}

}  // namespace viscid
