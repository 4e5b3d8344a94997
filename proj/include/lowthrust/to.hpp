#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lowthrust/config.hpp"
#include "lowthrust/eo.hpp"
#include "lowthrust/fo.hpp"

namespace lowthrust {

struct EoFailedAt : std::runtime_error {
  double t;
  explicit EoFailedAt(double t_)
      : std::runtime_error("inner EO solve failed at TOF " + std::to_string(t_)), t(t_) {}
};

struct ToSolution {
  Costates lam0 = Costates::Zero();
  double tof = 0.0;  // canonical
  double tof_days = 0.0;
  double beta_t = 0.0;
  Trajectory trajectory;
  double dv = 0.0;
  double fuel_kg = 0.0;
  double transversality_residual = 0.0;
  double tof_guess = 0.0;       // canonical
  double tof_guess_days = 0.0;
  std::vector<ContinuationStep> log;
  EoSolution eo_at_guess;
  double initial_residual = 0.0;
  int total_iterations = 0;
};

/// Keplerian true-longitude rate of the target element set.
double target_longitude_rate(const MeeState& x1, double mu);

/// Target longitude branch appropriate for a trial flight time t: the quoted
/// L1 corresponds to the reference TOF, so drop the whole revolutions the
/// target covers in the unused time. Multiples of 2*pi leave every other
/// element unchanged.
double branch_target_longitude(const MissionConfig& canonical, const PerturbationConfig& pc,
                               double t);

/// Bisection on t in [0, t_upper] until the full-throttle delta-v over t
/// matches dv_of_t(t). Exposed on the callable so the update rule can be
/// checked against analytic profiles.
double bisect_tof(const std::function<double(double)>& dv_of_t, const Propulsion& prop,
                  double t_upper, double tol, int max_iter = 60);

struct TofGuess {
  double t = 0.0;
  EoSolution eo;  // EO solution at the returned TOF
};

/// Algorithm driving bisect_tof with nested EO solves, warm-started across
/// bisection iterates.
TofGuess guess_tof(const MissionConfig& canonical, const PerturbationConfig& pc, double t_upper,
                   double tol);

/// Scaling of the TO running cost that zeroes the transversality residual of
/// the EO-seeded first guess: propagate full-throttle dynamics with lam0 over
/// [0, tof] and solve H(t1) - Ldot_t lamL(t1) = 0 for beta_t.
double compute_beta_t(const Costates& lam0, double tof, const MissionConfig& canonical,
                      const PerturbationConfig& pc);

/// Seven-dimensional shooting residual in (lam0, t1).
Eigen::VectorXd to_residual(const Eigen::VectorXd& v, const ControlLaw& law,
                            const MissionConfig& canonical, const PerturbationConfig& pc);

/// Full time-optimal pipeline: TOF guess, beta_t, Keplerian solve, then the
/// geocentric continuation order (eclipses first, J2 last) when enabled.
ToSolution solve_to(const MissionConfig& canonical,
                    std::optional<double> pinned_beta_t = std::nullopt);

}  // namespace lowthrust
