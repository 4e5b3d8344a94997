#include "lowthrust/dynamics.hpp"

#include <cmath>

#include "lowthrust/solar.hpp"
#include "lowthrust/units.hpp"

namespace lowthrust {

std::pair<Vec6, Mat63> gve_matrices(const MeeState& x, double mu) {
  const double p = x[kP], f = x[kF], g = x[kG], h = x[kH], k = x[kK], L = x[kL];
  if (p <= 0.0) throw NonPositiveSemiLatus();
  const double cL = std::cos(L), sL = std::sin(L);
  const double w = 1.0 + f * cL + g * sL;
  if (w <= 0.0) throw DegenerateOrbit("1 + f cosL + g sinL <= 0");

  const double sq = std::sqrt(p / mu);
  const double s2 = 1.0 + h * h + k * k;
  const double hs_kc = h * sL - k * cL;

  Vec6 A = Vec6::Zero();
  A[kL] = std::sqrt(mu * p) * (w / p) * (w / p);

  Mat63 B;
  B.setZero();
  B(kP, 1) = sq * 2.0 * p / w;
  B(kF, 0) = sq * sL;
  B(kF, 1) = sq * ((w + 1.0) * cL + f) / w;
  B(kF, 2) = -sq * g * hs_kc / w;
  B(kG, 0) = -sq * cL;
  B(kG, 1) = sq * ((w + 1.0) * sL + g) / w;
  B(kG, 2) = sq * f * hs_kc / w;
  B(kH, 2) = sq * s2 * cL / (2.0 * w);
  B(kK, 2) = sq * s2 * sL / (2.0 * w);
  B(kL, 2) = sq * hs_kc / w;
  return {A, B};
}

double mass_from_dv(double dv, const Propulsion& prop) {
  if (dv < 0.0) throw NegativeDeltaV();
  return prop.m0 * std::exp(-dv / prop.isp_g0);
}

Vec3 j2_accel(const MeeState& x, double r, const PerturbationConfig& pc) {
  const double h = x[kH], k = x[kK], L = x[kL];
  const double cL = std::cos(L), sL = std::sin(L);
  const double s2 = 1.0 + h * h + k * k;
  const double u = h * sL - k * cL;
  const double v = h * cL + k * sL;
  // Radial: 1 - 3 sin^2(i) sin^2(u) with sin(i) sin(u) = 2(h sinL - k cosL)/s2,
  // so only the 12u^2 term carries the 1/s2^2 factor.
  const double c = -3.0 * pc.mu * pc.j2 * pc.r_earth * pc.r_earth / (2.0 * r * r * r * r * s2 * s2);
  return c * Vec3(s2 * s2 - 12.0 * u * u, 8.0 * u * v, 4.0 * u * (1.0 - h * h - k * k));
}

double eclipse_factor(const MeeState& x, double t, const PerturbationConfig& pc) {
  if (!pc.eclipse_enabled) return 0.0;
  if (!pc.epoch_jd) throw EpochUnavailable();

  const double jd = *pc.epoch_jd + t * pc.seconds_per_tu / 86400.0;
  const Vec3 sun = sun_direction(jd);
  const Vec3 r = mee_to_cartesian(x, pc.mu).position;

  const double along = r.dot(sun);                       // positive on the Sun side
  const double perp = (r - along * sun).norm();
  const double a = perp - pc.shadow_radius;              // distance outside the umbra cylinder
  const double b = along;                                // distance in front of the terminator plane

  // Smooth max keeps nu differentiable across the cylinder/terminator corner.
  const double ct = pc.shadow_sharpness;
  const double hi = std::max(a, b);
  const double d = hi + std::log1p(std::exp(-ct * std::abs(a - b))) / ct;
  return 0.5 * (1.0 - std::tanh(ct * d));
}

Vec6 state_rate(const MeeState& x, double m, const ControlInput& u, double t,
                const Propulsion& prop, const PerturbationConfig& pc) {
  auto [A, B] = gve_matrices(x, pc.mu);
  Vec3 accel = Vec3::Zero();
  if (u.throttle > 0.0) {
    double scale = prop.t_max / prop.m0 * u.throttle;
    if (pc.eclipse_enabled) scale *= 1.0 - pc.eclipse_scale * eclipse_factor(x, t, pc);
    accel = scale * u.direction;
  }
  if (pc.j2_enabled) {
    const double w = 1.0 + x[kF] * std::cos(x[kL]) + x[kG] * std::sin(x[kL]);
    accel += j2_accel(x, x[kP] / w, pc);
  }
  (void)m;
  return A + B * accel;
}

}  // namespace lowthrust
