#include "lowthrust/to.hpp"

#include <cmath>
#include <limits>

#include "lowthrust/dynamics.hpp"
#include "lowthrust/units.hpp"

namespace lowthrust {

namespace {

// Full-throttle delta-v over [0, t]: thrust is constant at T_max, so the mass
// decreases linearly and the integral is closed form.
double full_throttle_dv(double t, const Propulsion& prop) {
  const double frac = prop.t_max * t / (prop.isp_g0 * prop.m0);
  if (frac >= 1.0) return std::numeric_limits<double>::infinity();  // burn-out
  return prop.isp_g0 * (-std::log1p(-frac));
}

double fuel_from_dv(double dv, const MissionConfig& canonical) {
  return canonical.m0_kg * (1.0 - std::exp(-dv / canonical.propulsion.isp_g0));
}

RootReport solve_to_shooting(const ControlLaw& law, const MissionConfig& canonical,
                             const PerturbationConfig& pc, const Eigen::VectorXd& guess) {
  const auto F = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    try {
      return to_residual(v, law, canonical, pc);
    } catch (const std::runtime_error&) {
      return Eigen::VectorXd::Constant(7, std::numeric_limits<double>::quiet_NaN());
    }
  };
  return solve_root(F, guess, canonical.solver.shooting_tol, canonical.solver.max_iterations);
}

}  // namespace

double target_longitude_rate(const MeeState& x1, double mu) {
  const double rate = gve_matrices(x1, mu).first[kL];
  if (rate <= 0.0) throw DegenerateOrbit("target true-longitude rate must be positive");
  return rate;
}

double branch_target_longitude(const MissionConfig& canonical, const PerturbationConfig& pc,
                               double t) {
  // The target longitude is an angle; the mission quotes the branch reached
  // at the reference TOF. For a shorter flight the target slot completes
  // fewer turns, so drop the whole revolutions it covers in the unused time.
  // Multiples of 2*pi leave every other element (and Ldot) unchanged.
  const double ldot = target_longitude_rate(canonical.x1, pc.mu);
  const double revs = std::floor((canonical.tof - t) * ldot / (2.0 * M_PI));
  return canonical.x1[kL] - 2.0 * M_PI * std::max(0.0, revs);
}

double bisect_tof(const std::function<double(double)>& dv_of_t, const Propulsion& prop,
                  double t_upper, double tol, int max_iter) {
  double lo = 0.0;
  double hi = t_upper;
  double t = 0.5 * t_upper;
  for (int i = 0; i < max_iter; ++i) {
    t = 0.5 * (lo + hi);
    const double dv_e = dv_of_t(t);
    const double dv_t = full_throttle_dv(t, prop);
    if (std::abs(dv_t - dv_e) <= tol) return t;
    if (dv_t > dv_e)
      hi = t;
    else
      lo = t;
  }
  return t;
}

TofGuess guess_tof(const MissionConfig& canonical, const PerturbationConfig& pc, double t_upper,
                   double tol) {
  TofGuess out;
  std::optional<Costates> warm;
  MissionConfig trial = canonical;
  const auto dv_of_t = [&](double t) {
    trial.x1[kL] = branch_target_longitude(canonical, pc, t);
    try {
      if (warm) {
        out.eo = solve_eo(trial, pc, *warm, t);
      } else {
        out.eo = solve_eo(trial, pc, t);
      }
    } catch (const std::runtime_error&) {
      // Warm start carried across a bisection jump (or a branch change) can
      // leave the basin; the rescaling ladder on the fresh linearized guess
      // is the fallback.
      try {
        out.eo = solve_eo(trial, pc, t);
      } catch (const std::runtime_error&) {
        throw EoFailedAt(t);
      }
    }
    warm = out.eo.lam0;
    out.t = t;
    return out.eo.dv;
  };
  const double t = bisect_tof(dv_of_t, canonical.propulsion, t_upper, tol,
                              canonical.solver.max_bisections);
  if (std::abs(t - out.t) > 1e-15) {
    trial.x1[kL] = branch_target_longitude(canonical, pc, t);
    out.eo = solve_eo(trial, pc, *warm, t);
    out.t = t;
  }
  return out;
}

double compute_beta_t(const Costates& lam0, double tof, const MissionConfig& canonical,
                      const PerturbationConfig& pc) {
  ControlLaw law{ProblemKind::TO, 0.0, 0.0, 0.0};
  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = lam0;
  const AugmentedState yf = propagate_final(y0, law, 0.0, tof, canonical.propulsion, pc, opts);
  const double m = mass_from_dv(yf.dv, canonical.propulsion);

  // With beta_t = 0 the Hamiltonian reduces to lam' xdot, so the
  // transversality condition yields beta_t directly.
  const double h0 = hamiltonian(yf.x, yf.lam, m, tof, law, canonical.propulsion, pc);
  const double ldot = target_longitude_rate(canonical.x1, pc.mu);
  return ldot * yf.lam[kL] - h0;
}

Eigen::VectorXd to_residual(const Eigen::VectorXd& v, const ControlLaw& law,
                            const MissionConfig& canonical, const PerturbationConfig& pc) {
  const Costates lam0 = v.segment<6>(0);
  const double t1 = v[6];
  if (t1 <= 1e-12)
    return Eigen::VectorXd::Constant(7, std::numeric_limits<double>::quiet_NaN());

  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = lam0;
  const AugmentedState yf = propagate_final(y0, law, 0.0, t1, canonical.propulsion, pc, opts);
  const double m = mass_from_dv(yf.dv, canonical.propulsion);

  Eigen::VectorXd res(7);
  res.segment<6>(0) = yf.x - canonical.x1;
  const double H = hamiltonian(yf.x, yf.lam, m, t1, law, canonical.propulsion, pc);
  res[6] = H - target_longitude_rate(canonical.x1, pc.mu) * yf.lam[kL];
  return res;
}

ToSolution solve_to(const MissionConfig& canonical, std::optional<double> pinned_beta_t) {
  // TOF guess and the first TO solve are Keplerian regardless of flags.
  PerturbationConfig kep = make_perturbations(canonical);
  kep.j2_enabled = false;
  kep.eclipse_enabled = false;
  kep.eclipse_scale = 0.0;

  ToSolution sol;
  TofGuess guess = guess_tof(canonical, kep, canonical.tof, canonical.solver.bisection_tol);
  sol.tof_guess = guess.t;
  sol.tof_guess_days = canonical.units.canonical_to_days(guess.t);
  sol.eo_at_guess = guess.eo;

  // Freeze the target-longitude branch at the guess time for the whole solve;
  // keeping it fixed keeps the shooting residual smooth in t1.
  MissionConfig work = canonical;
  work.x1[kL] = branch_target_longitude(canonical, kep, guess.t);

  ControlLaw law{ProblemKind::TO, 0.0, 0.0, 0.0};
  law.beta_t = pinned_beta_t ? *pinned_beta_t
                             : compute_beta_t(guess.eo.lam0, guess.t, work, kep);
  sol.beta_t = law.beta_t;

  Eigen::VectorXd v(7);
  v.segment<6>(0) = guess.eo.lam0;
  v[6] = guess.t;

  RootReport rep = solve_to_shooting(law, work, kep, v);
  sol.initial_residual = rep.initial_residual_norm;
  sol.total_iterations += rep.iterations;
  if (!rep.converged) throw NoConvergence(rep);
  v = rep.x;
  sol.log.push_back({"to", 0.0, v.segment<6>(0), rep.iterations, rep.residual_norm, 0.0});

  PerturbationConfig pc = kep;
  if (canonical.eclipse) {
    pc.eclipse_enabled = true;
    pc.epoch_jd = canonical.epoch_jd;
    const double de = canonical.solver.delta_eps;
    for (double eps = de; eps < 1.0 + 0.5 * de; eps += de) {
      pc.eclipse_scale = std::min(eps, 1.0);
      law.beta_t = compute_beta_t(v.segment<6>(0), v[6], work, pc);
      rep = solve_to_shooting(law, work, pc, v);
      sol.total_iterations += rep.iterations;
      if (!rep.converged)
        throw ContinuationStalled("eps", pc.eclipse_scale, to_string(rep.status));
      v = rep.x;
      sol.log.push_back({"eclipse", pc.eclipse_scale, v.segment<6>(0), rep.iterations,
                         rep.residual_norm, 0.0});
    }
  }
  if (canonical.j2) {
    pc.j2_enabled = true;
    law.beta_t = compute_beta_t(v.segment<6>(0), v[6], work, pc);
    rep = solve_to_shooting(law, work, pc, v);
    sol.total_iterations += rep.iterations;
    if (!rep.converged) throw ContinuationStalled("j2", 1.0, to_string(rep.status));
    v = rep.x;
    sol.log.push_back({"j2", 1.0, v.segment<6>(0), rep.iterations, rep.residual_norm, 0.0});
  }

  sol.lam0 = v.segment<6>(0);
  sol.tof = v[6];
  sol.tof_days = canonical.units.canonical_to_days(sol.tof);
  sol.beta_t = law.beta_t;

  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = sol.lam0;
  sol.trajectory = propagate(y0, law, 0.0, sol.tof, canonical.propulsion, pc, opts,
                             canonical.solver.samples);
  sol.dv = sol.trajectory.back().dv;
  sol.fuel_kg = fuel_from_dv(sol.dv, canonical);

  const auto& last = sol.trajectory.back();
  const double H = hamiltonian(last.x, last.lam, last.mass, sol.tof, law, canonical.propulsion, pc);
  sol.transversality_residual = H - target_longitude_rate(work.x1, pc.mu) * last.lam[kL];
  return sol;
}

}  // namespace lowthrust
