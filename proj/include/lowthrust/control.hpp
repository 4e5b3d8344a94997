#pragma once

#include "lowthrust/config.hpp"
#include "lowthrust/dynamics.hpp"
#include "lowthrust/types.hpp"

namespace lowthrust {

inline constexpr double kZeroPrimerThreshold = 1e-14;

/// Hamiltonian-minimizing thrust direction, -B'lam / |B'lam|.
Vec3 optimal_direction(const Vec3& primer);

/// rho = Gamma_TR - |B'lam|. Thrust only where rho < 0.
double switching_function(const Vec3& primer, double gamma_tr);

/// Hamiltonian-minimizing throttle for the law's problem kind.
double throttle(const ControlLaw& law, const Vec3& primer, double m, double m0);

/// Throttle and direction together; throttle is zero below the primer threshold.
ControlInput optimal_control(const ControlLaw& law, const Vec3& primer, double m, double m0);

double hamiltonian(const MeeState& x, const Costates& lam, double m, double t,
                   const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc);

/// Hamiltonian evaluated with a fixed control input rather than the feedback
/// law. Used when differentiating H in x: along an arc the control is held
/// constant, which keeps the bang-bang branch from flipping inside a
/// finite-difference stencil.
double hamiltonian(const MeeState& x, const Costates& lam, double m, double t,
                   const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc,
                   const ControlInput& u);

/// -dH/dx by central differences, with the control frozen at the value the
/// law commands at the nominal state.
Costates costate_rate(const MeeState& x, const Costates& lam, double m, double t,
                      const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc);

/// -dH/dx with an explicitly supplied (frozen) control input.
Costates costate_rate(const MeeState& x, const Costates& lam, double m, double t,
                      const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc,
                      const ControlInput& u);

}  // namespace lowthrust
