#pragma once

#include "lowthrust/config.hpp"
#include "lowthrust/propagate.hpp"
#include "lowthrust/root.hpp"
#include "lowthrust/types.hpp"

namespace lowthrust {

struct EoSolution {
  Costates lam0 = Costates::Zero();
  Trajectory trajectory;
  double dv = 0.0;       // canonical
  double fuel_kg = 0.0;
  RootReport report;
};

/// Initial costates of the energy-optimal problem linearized about the
/// uncontrolled coast from x0, solved as a linear two-point boundary value
/// problem over [0, tof].
Costates linear_eo_guess(const MissionConfig& canonical, const PerturbationConfig& pc, double tof);

/// Shooting residual x(t1) - x1 of the EO problem for a given initial costate.
Vec6 eo_residual(const Costates& lam0, const MissionConfig& canonical,
                 const PerturbationConfig& pc, double tof);

EoSolution solve_eo(const MissionConfig& canonical, const PerturbationConfig& pc,
                    const Costates& guess, double tof);

/// Linearized first guess plus a deterministic guess-rescaling retry ladder.
EoSolution solve_eo(const MissionConfig& canonical, const PerturbationConfig& pc, double tof);

/// Convenience overload at the mission's own time of flight.
EoSolution solve_eo(const MissionConfig& canonical, const PerturbationConfig& pc);

}  // namespace lowthrust
