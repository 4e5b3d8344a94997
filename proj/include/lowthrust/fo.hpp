#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lowthrust/config.hpp"
#include "lowthrust/eo.hpp"

namespace lowthrust {

struct ContinuationStep {
  std::string stage;   // "sfo", "fo", "eclipse"
  double param = 0.0;  // smoothing k or eclipse epsilon
  Costates lam0 = Costates::Zero();
  int iterations = 0;
  double residual = 0.0;
  double fuel_kg = 0.0;
};

struct ContinuationStalled : std::runtime_error {
  std::string stage;
  double param;
  ContinuationStalled(std::string st, double p, const std::string& why)
      : std::runtime_error("continuation stalled at " + st + " = " + std::to_string(p) + ": " + why),
        stage(std::move(st)),
        param(p) {}
};

struct FoSolution {
  Costates lam0 = Costates::Zero();
  double gamma_tr = 0.0;
  Trajectory trajectory;
  double dv = 0.0;
  double fuel_kg = 0.0;
  std::vector<ContinuationStep> log;
  EoSolution eo;
  double initial_residual = 0.0;  // |Phi| of the EO guess at the first SFO step
  int total_iterations = 0;
};

/// Bisect the thrust threshold so the bang-bang discretization of a sampled
/// throttle profile reproduces its delta-v. Mass is accumulated along the
/// profile being built.
double gamma_tr_from_profile(const Eigen::VectorXd& t, const Eigen::VectorXd& gamma_e,
                             const Propulsion& prop, double tol, int max_iter = 60);

double compute_gamma_tr(const EoSolution& eo, const Propulsion& prop, double tol);

/// Shooting residual of the FO/SFO problem (also used by sweeps).
Vec6 fo_residual(const Costates& lam0, const ControlLaw& law, const MissionConfig& canonical,
                 const PerturbationConfig& pc);

/// EO warm start, Gamma_TR bisection, smoothing continuation and the final
/// discontinuous solve. Eclipses, when enabled, are introduced afterwards by
/// continue_perturbations.
FoSolution solve_fo(const MissionConfig& canonical,
                    std::optional<double> pinned_gamma_tr = std::nullopt);

/// Ramp the eclipse factor from 0 to 1 in steps of delta_eps, re-solving the
/// discontinuous FO problem at each step.
FoSolution continue_perturbations(const MissionConfig& canonical, const FoSolution& fo_j2,
                                  double delta_eps);

}  // namespace lowthrust
