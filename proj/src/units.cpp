#include "lowthrust/units.hpp"

#include <cmath>

namespace lowthrust {

UnitSystem UnitSystem::heliocentric(double m0_kg) {
  UnitSystem u;
  u.length_km = kAuKm;
  u.time_s = 365.25 * 86400.0;
  u.mass_kg = m0_kg;
  u.mu_canonical = kMuSunKm3S2 * u.time_s * u.time_s / (u.length_km * u.length_km * u.length_km);
  return u;
}

UnitSystem UnitSystem::geocentric(double m0_kg) {
  UnitSystem u;
  u.length_km = kEarthRadiusLuKm;
  u.time_s = 86400.0;
  u.mass_kg = m0_kg;
  u.mu_canonical = kMuEarthKm3S2 * u.time_s * u.time_s / (u.length_km * u.length_km * u.length_km);
  return u;
}

CartesianState mee_to_cartesian(const MeeState& x, double mu) {
  const double p = x[kP], f = x[kF], g = x[kG], h = x[kH], k = x[kK], L = x[kL];
  if (p <= 0.0) throw NonPositiveSemiLatus();
  const double cL = std::cos(L), sL = std::sin(L);
  const double w = 1.0 + f * cL + g * sL;
  if (w <= 0.0) throw DegenerateOrbit("1 + f cosL + g sinL <= 0");

  const double a2 = h * h - k * k;
  const double s2 = 1.0 + h * h + k * k;
  const double r = p / w;
  const double sq = std::sqrt(mu / p);

  CartesianState out;
  out.position = (r / s2) * Vec3(cL + a2 * cL + 2.0 * h * k * sL,
                                 sL - a2 * sL + 2.0 * h * k * cL,
                                 2.0 * (h * sL - k * cL));
  out.velocity = (sq / s2) * Vec3(-(sL + a2 * sL - 2.0 * h * k * cL + g - 2.0 * f * h * k + a2 * g),
                                  -(-cL + a2 * cL + 2.0 * h * k * sL - f + 2.0 * g * h * k + a2 * f),
                                  2.0 * (h * cL + k * sL + f * h + g * k));
  return out;
}

MeeState cartesian_to_mee(const CartesianState& s, double mu) {
  const Vec3& r = s.position;
  const Vec3& v = s.velocity;
  const Vec3 hv = r.cross(v);
  const double hn = hv.norm();
  if (hn < 1e-14 || r.norm() < 1e-14) throw DegenerateOrbit("zero angular momentum");

  const Vec3 hhat = hv / hn;
  if (1.0 + hhat.z() < 1e-12) throw RetrogradeSingularity();

  const double h = -hhat.y() / (1.0 + hhat.z());
  const double k = hhat.x() / (1.0 + hhat.z());
  const double p = hn * hn / mu;

  const double s2 = 1.0 + h * h + k * k;
  // Unnormalized equinoctial basis, |fhat| = |ghat| = s2.
  const Vec3 fhat(1.0 + h * h - k * k, 2.0 * h * k, -2.0 * k);
  const Vec3 ghat(2.0 * h * k, 1.0 - h * h + k * k, 2.0 * h);

  const Vec3 ev = v.cross(hv) / mu - r.normalized();
  const double f = ev.dot(fhat) / s2;
  const double g = ev.dot(ghat) / s2;

  double L = std::atan2(r.dot(ghat), r.dot(fhat));
  if (L < 0.0) L += 2.0 * M_PI;

  MeeState x;
  x << p, f, g, h, k, L;
  return x;
}

MissionConfig canonicalize(const MissionConfig& config) {
  if (config.canonical) return config;
  MissionConfig c = config;
  c.units = (config.regime == Regime::Heliocentric) ? UnitSystem::heliocentric(config.m0_kg)
                                                    : UnitSystem::geocentric(config.m0_kg);
  c.tof = c.units.days_to_canonical(config.tof_days);
  c.propulsion.t_max = c.units.force_from_newton(config.t_max_N);
  c.propulsion.isp_g0 = c.units.velocity_from_ms(config.isp_s * kG0);
  c.propulsion.m0 = config.m0_kg / c.units.mass_kg;  // = 1 by construction
  c.canonical = true;
  return c;
}

PerturbationConfig make_perturbations(const MissionConfig& canonical) {
  PerturbationConfig pc;
  pc.mu = canonical.units.mu_canonical;
  pc.j2_enabled = canonical.j2;
  pc.r_earth = kEarthRadiusJ2Km / canonical.units.length_km;
  pc.eclipse_enabled = canonical.eclipse;
  pc.eclipse_scale = canonical.eclipse ? 1.0 : 0.0;
  pc.epoch_jd = canonical.epoch_jd;
  pc.seconds_per_tu = canonical.units.time_s;
  return pc;
}

}  // namespace lowthrust
