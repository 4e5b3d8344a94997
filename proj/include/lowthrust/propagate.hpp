#pragma once

#include <vector>

#include "lowthrust/config.hpp"
#include "lowthrust/control.hpp"
#include "lowthrust/integrate.hpp"
#include "lowthrust/types.hpp"

namespace lowthrust {

/// State, costates and accumulated delta-v stacked for propagation.
struct AugmentedState {
  MeeState x = MeeState::Zero();
  Costates lam = Costates::Zero();
  double dv = 0.0;

  Eigen::VectorXd pack() const;
  static AugmentedState unpack(const Eigen::VectorXd& y);
};

struct TrajectorySample {
  double t = 0.0;
  MeeState x = MeeState::Zero();
  Costates lam = Costates::Zero();
  double dv = 0.0;
  double throttle = 0.0;   // commanded Gamma
  double rho = 0.0;
  Vec3 direction = Vec3::Zero();
  double nu = 0.0;
  double mass = 0.0;       // canonical
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double t0 = 0.0;
  double t1 = 0.0;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

/// Time derivative of the packed augmented state under the given law.
Eigen::VectorXd augmented_rate(double t, const Eigen::VectorXd& y, const ControlLaw& law,
                               const Propulsion& prop, const PerturbationConfig& pc);

/// Final augmented state only; used inside shooting loops.
AugmentedState propagate_final(const AugmentedState& y0, const ControlLaw& law, double t0,
                               double t1, const Propulsion& prop, const PerturbationConfig& pc,
                               const OdeOptions& opts);

/// Full trajectory with diagnostics, sampled at every accepted step plus
/// `uniform_samples` evenly spaced epochs.
Trajectory propagate(const AugmentedState& y0, const ControlLaw& law, double t0, double t1,
                     const Propulsion& prop, const PerturbationConfig& pc, const OdeOptions& opts,
                     int uniform_samples = 400);

}  // namespace lowthrust
