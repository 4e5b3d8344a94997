#include "lowthrust/fo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lowthrust/dynamics.hpp"
#include "lowthrust/units.hpp"

namespace lowthrust {

namespace {

// Delta-v of the bang-bang profile thresholded at gamma_tr, with the mass
// history accumulated over the on-arcs of the profile itself.
double bang_bang_dv(const Eigen::VectorXd& t, const Eigen::VectorXd& ge, double gamma_tr,
                    const Propulsion& prop) {
  double m = prop.m0;
  double dv = 0.0;
  for (int i = 0; i + 1 < t.size(); ++i) {
    const double dt = t[i + 1] - t[i];
    if (dt <= 0.0) continue;
    const double a = ge[i], b = ge[i + 1];
    // On-duration within the segment, with the crossing located linearly.
    double on = 0.0;
    if (a > gamma_tr && b > gamma_tr) {
      on = dt;
    } else if (a > gamma_tr) {
      on = dt * (a - gamma_tr) / (a - b);
    } else if (b > gamma_tr) {
      on = dt * (b - gamma_tr) / (b - a);
    }
    if (on > 0.0) {
      // Full throttle burns at constant thrust: dv = c ln(m/(m - T on/c)).
      const double frac = prop.t_max * on / (prop.isp_g0 * m);
      dv += prop.isp_g0 * (-std::log1p(-frac));
      m *= 1.0 - frac;
    }
  }
  return dv;
}

double trapezoid_dv(const Eigen::VectorXd& t, const Eigen::VectorXd& ge, const Propulsion& prop) {
  double s = 0.0;
  for (int i = 0; i + 1 < t.size(); ++i) s += 0.5 * (ge[i] + ge[i + 1]) * (t[i + 1] - t[i]);
  return prop.t_max / prop.m0 * s;
}

// The discontinuous bang-bang throttle leaves the integrator's step sequence
// imprinted on the shooting residual, so exact-FO stages cannot reliably reach
// the smooth-problem tolerance; residuals below this floor count as converged.
constexpr double kBangBangTol = 1e-8;

RootReport solve_shooting(const ControlLaw& law, const MissionConfig& canonical,
                          const PerturbationConfig& pc, const Costates& guess) {
  const auto F = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    try {
      return fo_residual(v, law, canonical, pc);
    } catch (const std::runtime_error&) {
      return Eigen::VectorXd::Constant(6, std::numeric_limits<double>::quiet_NaN());
    }
  };
  double tol = canonical.solver.shooting_tol;
  if (law.kind == ProblemKind::FO) tol = std::max(tol, kBangBangTol);
  return solve_root(F, guess, tol, canonical.solver.max_iterations);
}

double final_dv(const Costates& lam0, const ControlLaw& law, const MissionConfig& canonical,
                const PerturbationConfig& pc) {
  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = lam0;
  return propagate_final(y0, law, 0.0, canonical.tof, canonical.propulsion, pc, opts).dv;
}

double fuel_from_dv(double dv, const MissionConfig& canonical) {
  return canonical.m0_kg * (1.0 - std::exp(-dv / canonical.propulsion.isp_g0));
}

}  // namespace

double gamma_tr_from_profile(const Eigen::VectorXd& t, const Eigen::VectorXd& ge,
                             const Propulsion& prop, double tol, int max_iter) {
  const double dv_target = trapezoid_dv(t, ge, prop);
  double lo = 0.0;
  double hi = ge.maxCoeff();
  double gamma_tr = 0.5 * hi;
  for (int i = 0; i < max_iter; ++i) {
    gamma_tr = 0.5 * (lo + hi);
    const double dv = bang_bang_dv(t, ge, gamma_tr, prop);
    if (std::abs(dv - dv_target) <= tol) return gamma_tr;
    if (dv > dv_target)
      lo = gamma_tr;
    else
      hi = gamma_tr;
  }
  return gamma_tr;  // best bracket midpoint; caller tolerances absorb the rest
}

double compute_gamma_tr(const EoSolution& eo, const Propulsion& prop, double tol) {
  const auto& s = eo.trajectory.samples;
  Eigen::VectorXd t(s.size()), ge(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    t[i] = s[i].t;
    ge[i] = s[i].throttle;
  }
  return gamma_tr_from_profile(t, ge, prop, tol);
}

Vec6 fo_residual(const Costates& lam0, const ControlLaw& law, const MissionConfig& canonical,
                 const PerturbationConfig& pc) {
  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = lam0;
  const AugmentedState yf =
      propagate_final(y0, law, 0.0, canonical.tof, canonical.propulsion, pc, opts);
  return yf.x - canonical.x1;
}

FoSolution solve_fo(const MissionConfig& canonical, std::optional<double> pinned_gamma_tr) {
  PerturbationConfig pc = make_perturbations(canonical);
  pc.eclipse_enabled = false;  // eclipses enter via continue_perturbations
  pc.eclipse_scale = 0.0;

  FoSolution sol;
  sol.eo = solve_eo(canonical, pc);
  sol.gamma_tr = pinned_gamma_tr
                     ? *pinned_gamma_tr
                     : compute_gamma_tr(sol.eo, canonical.propulsion, canonical.solver.bisection_tol);

  Costates lam = sol.eo.lam0;
  ControlLaw law{ProblemKind::SFO, sol.gamma_tr, 0.0, 0.0};
  bool first = true;
  for (double k : canonical.solver.k_steps) {
    law.smoothing_k = k;
    RootReport rep = solve_shooting(law, canonical, pc, lam);
    if (first) {
      sol.initial_residual = rep.initial_residual_norm;
      first = false;
    }
    sol.total_iterations += rep.iterations;
    if (!rep.converged) throw ContinuationStalled("k", k, to_string(rep.status));
    lam = rep.x;
    sol.log.push_back({"sfo", k, lam, rep.iterations, rep.residual_norm,
                       fuel_from_dv(final_dv(lam, law, canonical, pc), canonical)});
  }

  law.kind = ProblemKind::FO;
  RootReport rep = solve_shooting(law, canonical, pc, lam);
  sol.total_iterations += rep.iterations;
  if (!rep.converged) throw ContinuationStalled("fo", 1.0, to_string(rep.status));
  sol.lam0 = rep.x;

  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = sol.lam0;
  sol.trajectory =
      propagate(y0, law, 0.0, canonical.tof, canonical.propulsion, pc, opts, canonical.solver.samples);
  sol.dv = sol.trajectory.back().dv;
  sol.fuel_kg = fuel_from_dv(sol.dv, canonical);
  sol.log.push_back({"fo", 1.0, sol.lam0, rep.iterations, rep.residual_norm, sol.fuel_kg});
  return sol;
}

FoSolution continue_perturbations(const MissionConfig& canonical, const FoSolution& fo_j2,
                                  double delta_eps) {
  PerturbationConfig pc = make_perturbations(canonical);
  pc.eclipse_enabled = true;

  FoSolution sol = fo_j2;
  ControlLaw law{ProblemKind::FO, sol.gamma_tr, 0.0, 0.0};
  Costates lam = sol.lam0;
  // Walk eps to 1 with the nominal stride, halving it when a stage fails to
  // converge; the eclipse geometry can make individual stages stiff. Keep
  // stage attempts cheap: a failure only costs a retry at a smaller stride.
  MissionConfig capped = canonical;
  capped.solver.max_iterations = std::min(canonical.solver.max_iterations, 30);
  // Where the shadow boundary grazes a switching time the residual floor
  // rises well above the converged tolerance. Interior stages only seed the
  // next warm start, so a near-converged iterate is still worth keeping;
  // the final eps = 1 stage must meet the full tolerance.
  const double interior_tol = 1e-3;
  double eps = 0.0;
  double step = delta_eps;
  while (eps < 1.0 - 1e-12) {
    const double target = std::min(eps + step, 1.0);
    pc.eclipse_scale = target;
    RootReport rep = solve_shooting(law, capped, pc, lam);
    sol.total_iterations += rep.iterations;
    const bool usable =
        rep.converged || (target < 1.0 && rep.residual_norm < interior_tol && rep.x.allFinite());
    if (!usable) {
      step *= 0.5;
      if (step < delta_eps / 256.0)
        throw ContinuationStalled("eps", target, to_string(rep.status));
      continue;
    }
    eps = target;
    if (step < delta_eps) step *= 2.0;
    lam = rep.x;
    sol.log.push_back({"eclipse", eps, lam, rep.iterations, rep.residual_norm,
                       fuel_from_dv(final_dv(lam, law, canonical, pc), canonical)});
  }
  sol.lam0 = lam;

  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = sol.lam0;
  sol.trajectory =
      propagate(y0, law, 0.0, canonical.tof, canonical.propulsion, pc, opts, canonical.solver.samples);
  sol.dv = sol.trajectory.back().dv;
  sol.fuel_kg = fuel_from_dv(sol.dv, canonical);
  return sol;
}

}  // namespace lowthrust
