#include "lowthrust/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "lowthrust/dynamics.hpp"

namespace lowthrust {

Eigen::VectorXd AugmentedState::pack() const {
  Eigen::VectorXd y(13);
  y.segment<6>(0) = x;
  y.segment<6>(6) = lam;
  y[12] = dv;
  return y;
}

AugmentedState AugmentedState::unpack(const Eigen::VectorXd& y) {
  AugmentedState s;
  s.x = y.segment<6>(0);
  s.lam = y.segment<6>(6);
  s.dv = y[12];
  return s;
}

Eigen::VectorXd augmented_rate(double t, const Eigen::VectorXd& y, const ControlLaw& law,
                               const Propulsion& prop, const PerturbationConfig& pc) {
  const AugmentedState s = AugmentedState::unpack(y);
  // Abort early on wildly unphysical trajectories (e.g. a plunge toward the
  // primary under a bad costate guess) instead of grinding the step size down.
  if (s.x[kP] < 1e-2 || s.x[kP] > 1e3) throw DegenerateOrbit("semi-latus rectum out of range");
  const double m = mass_from_dv(std::max(s.dv, 0.0), prop);

  auto [A, B] = gve_matrices(s.x, pc.mu);
  const Vec3 primer = B.transpose() * s.lam;
  const ControlInput u = optimal_control(law, primer, m, prop.m0);

  double nu = 0.0;
  if (pc.eclipse_enabled) nu = eclipse_factor(s.x, t, pc);
  const double delivered = (1.0 - pc.eclipse_scale * nu) * u.throttle;

  Vec3 accel = prop.t_max / prop.m0 * delivered * u.direction;
  if (pc.j2_enabled) {
    const double w = 1.0 + s.x[kF] * std::cos(s.x[kL]) + s.x[kG] * std::sin(s.x[kL]);
    accel += j2_accel(s.x, s.x[kP] / w, pc);
  }

  Eigen::VectorXd rate(13);
  rate.segment<6>(0) = A + B * accel;
  rate.segment<6>(6) = costate_rate(s.x, s.lam, m, t, law, prop, pc);
  rate[12] = prop.t_max / prop.m0 * delivered;
  return rate;
}

AugmentedState propagate_final(const AugmentedState& y0, const ControlLaw& law, double t0,
                               double t1, const Propulsion& prop, const PerturbationConfig& pc,
                               const OdeOptions& opts) {
  const auto sol = integrate(
      [&](double t, const Eigen::VectorXd& y) { return augmented_rate(t, y, law, prop, pc); },
      y0.pack(), t0, t1, opts);
  return AugmentedState::unpack(sol.final_state());
}

Trajectory propagate(const AugmentedState& y0, const ControlLaw& law, double t0, double t1,
                     const Propulsion& prop, const PerturbationConfig& pc, const OdeOptions& opts,
                     int uniform_samples) {
  const auto sol = integrate(
      [&](double t, const Eigen::VectorXd& y) { return augmented_rate(t, y, law, prop, pc); },
      y0.pack(), t0, t1, opts);

  std::vector<double> epochs = sol.times();
  const int n_uniform = std::max(uniform_samples, 2);
  for (int i = 0; i < n_uniform; ++i)
    epochs.push_back(t0 + (t1 - t0) * static_cast<double>(i) / (n_uniform - 1));
  std::sort(epochs.begin(), epochs.end());
  epochs.erase(std::unique(epochs.begin(), epochs.end(),
                           [&](double a, double b) { return std::abs(a - b) < 1e-15 * (t1 - t0); }),
               epochs.end());

  Trajectory traj;
  traj.t0 = t0;
  traj.t1 = t1;
  traj.samples.reserve(epochs.size());
  for (double t : epochs) {
    TrajectorySample s;
    s.t = t;
    const AugmentedState a = AugmentedState::unpack(sol.eval(t));
    s.x = a.x;
    s.lam = a.lam;
    s.dv = a.dv;
    s.mass = mass_from_dv(std::max(a.dv, 0.0), prop);

    auto [A, B] = gve_matrices(s.x, pc.mu);
    const Vec3 primer = B.transpose() * s.lam;
    const ControlInput u = optimal_control(law, primer, s.mass, prop.m0);
    s.throttle = u.throttle;
    s.direction = u.direction;
    s.rho = switching_function(primer, law.gamma_tr);
    s.nu = pc.eclipse_enabled ? eclipse_factor(s.x, t, pc) : 0.0;
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

}  // namespace lowthrust
