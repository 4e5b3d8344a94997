#pragma once

#include <utility>

#include "lowthrust/config.hpp"
#include "lowthrust/types.hpp"

namespace lowthrust {

struct ControlInput {
  double throttle = 0.0;         // Gamma, in [0, m0/m]
  Vec3 direction = Vec3::Zero(); // unit RTN vector when throttle > 0
};

/// Gauss variational equations of the modified equinoctial elements:
/// xdot = A + B * a_rtn. A is the Keplerian drift (only L varies).
std::pair<Vec6, Mat63> gve_matrices(const MeeState& x, double mu);

/// Rocket equation: mass after spending a given delta-v.
double mass_from_dv(double dv, const Propulsion& prop);

/// J2 acceleration in RTN, r is the orbital radius.
Vec3 j2_accel(const MeeState& x, double r, const PerturbationConfig& pc);

/// Smooth shadow factor: 1 deep in the umbra, 0 in sunlight.
double eclipse_factor(const MeeState& x, double t, const PerturbationConfig& pc);

/// Controlled element rates with the enabled perturbations.
Vec6 state_rate(const MeeState& x, double m, const ControlInput& u, double t,
                const Propulsion& prop, const PerturbationConfig& pc);

}  // namespace lowthrust
