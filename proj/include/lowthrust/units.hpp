#pragma once

#include "lowthrust/config.hpp"
#include "lowthrust/types.hpp"

namespace lowthrust {

struct CartesianState {
  Vec3 position = Vec3::Zero();  // L_u
  Vec3 velocity = Vec3::Zero();  // L_u / T_u
};

/// Element set to inertial position/velocity.
CartesianState mee_to_cartesian(const MeeState& x, double mu);

/// Inverse of mee_to_cartesian up to wrapping of L into [0, 2pi).
MeeState cartesian_to_mee(const CartesianState& s, double mu);

/// Express a mission-unit config (km, s, kg, N) in the regime's canonical
/// unit system. Idempotent on already-canonical input.
MissionConfig canonicalize(const MissionConfig& config);

/// Builds the perturbation setup implied by a canonical config (epsilon = 1
/// when eclipses are on; callers scale it down during continuation).
PerturbationConfig make_perturbations(const MissionConfig& canonical);

}  // namespace lowthrust
