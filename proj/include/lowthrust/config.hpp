#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lowthrust/types.hpp"

namespace lowthrust {

/// Scale factors mapping mission units (km, s, kg) to canonical units.
struct UnitSystem {
  double length_km = 1.0;       // km per L_u
  double time_s = 1.0;          // s per T_u
  double mass_kg = 1.0;         // kg per M_u
  double mu_canonical = 1.0;    // gravitational parameter, L_u^3 / T_u^2

  static UnitSystem heliocentric(double m0_kg);
  static UnitSystem geocentric(double m0_kg);

  double velocity_kms() const { return length_km / time_s; }
  // Canonical value of a force given in newtons.
  double force_from_newton(double newton) const {
    return newton * 1e-3 * time_s * time_s / (mass_kg * length_km);
  }
  // Canonical value of a velocity given in m/s.
  double velocity_from_ms(double ms) const { return ms * 1e-3 * time_s / length_km; }
  double days_to_canonical(double days) const { return days * 86400.0 / time_s; }
  double canonical_to_days(double t) const { return t * time_s / 86400.0; }
};

struct Propulsion {
  double t_max = 0.0;    // max thrust, canonical force
  double isp_g0 = 0.0;   // exhaust velocity Isp*g0, canonical velocity
  double m0 = 1.0;       // initial mass, canonical (M_u = m0 so this is 1)
};

struct PerturbationConfig {
  bool j2_enabled = false;
  double j2 = 1.08262668e-3;
  double r_earth = 1.0;      // Earth radius used in the J2 term, L_u
  double mu = 1.0;           // gravitational parameter, canonical
  bool eclipse_enabled = false;
  double eclipse_scale = 0.0;        // continuation parameter epsilon in [0,1]
  double shadow_sharpness = 100.0;   // c_t
  // Radius of the smoothed umbra cylinder, as a fraction of R_E. The boundary
  // sits at the limb: with the tanh sharpness above, nu saturates to 1 about
  // 2% of R_E inside it, which covers the c_s = 0.9 full-shadow core.
  double shadow_radius = 1.0;
  std::optional<double> epoch_jd;    // epoch of t = 0 for the Sun geometry
  double seconds_per_tu = 86400.0;   // converts canonical t to elapsed seconds
};

enum class ProblemKind { EO, SFO, FO, TO };

struct ControlLaw {
  ProblemKind kind = ProblemKind::EO;
  double gamma_tr = 1.0;     // FO/SFO running-cost scaling
  double smoothing_k = 0.0;  // SFO smoothing parameter, in [0,1)
  double beta_t = 1.0;       // TO running-cost scaling
};

struct SolverSettings {
  double ode_tol = 1e-12;
  double shooting_tol = 1e-10;
  int max_iterations = 200;
  int samples = 400;
  std::vector<double> k_steps = {0.0, 0.2475, 0.4950, 0.7425, 0.99};
  double delta_eps = 0.1;
  double bisection_tol = 1e-6;
  int max_bisections = 60;
};

enum class Regime { Heliocentric, Geocentric };

struct MissionConfig {
  std::string name;
  Regime regime = Regime::Heliocentric;
  MeeState x0 = MeeState::Zero();
  MeeState x1 = MeeState::Zero();
  double tof_days = 0.0;        // fixed TOF (EO/FO); upper bracket for TO
  double isp_s = 0.0;
  double t_max_N = 0.0;
  double m0_kg = 0.0;
  std::optional<double> epoch_jd;
  bool j2 = false;
  bool eclipse = false;
  SolverSettings solver;

  bool canonical = false;       // set once canonicalize() has run
  UnitSystem units;             // valid when canonical
  double tof = 0.0;             // canonical TOF, valid when canonical
  Propulsion propulsion;        // canonical, valid when canonical
};

inline constexpr double kG0 = 9.80665;                 // m/s^2
inline constexpr double kMuSunKm3S2 = 1.32712440018e11;
inline constexpr double kMuEarthKm3S2 = 3.986e5;
inline constexpr double kAuKm = 149597870.66;
inline constexpr double kEarthRadiusLuKm = 6378.1363;  // geocentric length unit
inline constexpr double kEarthRadiusJ2Km = 6378.1370;  // R_E in the J2 term

}  // namespace lowthrust
