#include "lowthrust/eo.hpp"

#include <cmath>
#include <iterator>
#include <limits>

#include "lowthrust/dynamics.hpp"

namespace lowthrust {

namespace {

Vec6 keplerian_drift(const MeeState& x, double mu) {
  return gve_matrices(x, mu).first;
}

// dA/dx by central differences; A only drives L so this is cheap.
Eigen::Matrix<double, 6, 6> drift_jacobian(const MeeState& x, double mu) {
  static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  Eigen::Matrix<double, 6, 6> C;
  MeeState xp = x;
  for (int i = 0; i < 6; ++i) {
    const double step = cbrt_eps * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + step;
    const Vec6 ap = keplerian_drift(xp, mu);
    xp[i] = x[i] - step;
    const Vec6 am = keplerian_drift(xp, mu);
    xp[i] = x[i];
    C.col(i) = (ap - am) / (2.0 * step);
  }
  return C;
}

}  // namespace

Costates linear_eo_guess(const MissionConfig& canonical, const PerturbationConfig& pc,
                         double tof) {
  const double mu = pc.mu;
  const double acc = canonical.propulsion.t_max / canonical.propulsion.m0;

  // z = [coast reference (6); seven 12-dim columns of the linear TPBVP]:
  // six basis solutions seeded by unit initial costates and one particular
  // solution seeded by [x0; 0].
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(6 + 12 * 7);
  z0.segment<6>(0) = canonical.x0;
  for (int i = 0; i < 6; ++i) z0[6 + 12 * i + 6 + i] = 1.0;
  z0.segment<6>(6 + 12 * 6) = canonical.x0;

  const auto rhs = [&](double /*t*/, const Eigen::VectorXd& z) {
    const MeeState xn = z.segment<6>(0);
    const Vec6 A = keplerian_drift(xn, mu);
    const Eigen::Matrix<double, 6, 6> C = drift_jacobian(xn, mu);
    const Mat63 B = gve_matrices(xn, mu).second;
    const Eigen::Matrix<double, 6, 6> BBt = acc * (B * B.transpose());
    const Vec6 D = A - C * xn;

    Eigen::VectorXd dz(z.size());
    dz.segment<6>(0) = A;
    for (int i = 0; i < 7; ++i) {
      const auto y = z.segment<12>(6 + 12 * i);
      const Vec6 yx = y.segment<6>(0);
      const Vec6 yl = y.segment<6>(6);
      dz.segment<6>(6 + 12 * i) = C * yx - BBt * yl;
      dz.segment<6>(6 + 12 * i + 6) = -C.transpose() * yl;
      if (i == 6) dz.segment<6>(6 + 12 * i) += D;
    }
    return dz;
  };

  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = 1e-10;
  const Eigen::VectorXd zf = integrate(rhs, z0, 0.0, tof, opts).final_state();

  Eigen::Matrix<double, 6, 6> Xlam;
  for (int i = 0; i < 6; ++i) Xlam.col(i) = zf.segment<6>(6 + 12 * i);
  const Vec6 xpart = zf.segment<6>(6 + 12 * 6);

  Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(Xlam);
  if (!lu.isInvertible()) throw SingularTransition();
  return lu.solve(canonical.x1 - xpart);
}

Vec6 eo_residual(const Costates& lam0, const MissionConfig& canonical,
                 const PerturbationConfig& pc, double tof) {
  ControlLaw law{ProblemKind::EO};
  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = lam0;
  const AugmentedState yf = propagate_final(y0, law, 0.0, tof, canonical.propulsion, pc, opts);
  return yf.x - canonical.x1;
}

EoSolution solve_eo(const MissionConfig& canonical, const PerturbationConfig& pc,
                    const Costates& guess, double tof) {
  const auto F = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    try {
      return eo_residual(v, canonical, pc, tof);
    } catch (const std::runtime_error&) {
      return Eigen::VectorXd::Constant(6, std::numeric_limits<double>::quiet_NaN());
    }
  };

  RootReport rep = solve_root(F, guess, canonical.solver.shooting_tol,
                              canonical.solver.max_iterations);
  if (!rep.converged) throw NoConvergence(rep);

  EoSolution sol;
  sol.lam0 = rep.x;
  sol.report = std::move(rep);

  ControlLaw law{ProblemKind::EO};
  OdeOptions opts;
  opts.rel_tol = opts.abs_tol = canonical.solver.ode_tol;
  AugmentedState y0;
  y0.x = canonical.x0;
  y0.lam = sol.lam0;
  sol.trajectory = propagate(y0, law, 0.0, tof, canonical.propulsion, pc, opts,
                             canonical.solver.samples);
  sol.dv = sol.trajectory.back().dv;
  sol.fuel_kg = canonical.m0_kg * (1.0 - std::exp(-sol.dv / canonical.propulsion.isp_g0));
  return sol;
}

EoSolution solve_eo(const MissionConfig& canonical, const PerturbationConfig& pc, double tof) {
  const Costates guess = linear_eo_guess(canonical, pc, tof);
  // The linearized costates can overshoot on long multi-revolution transfers;
  // rescaling them walks back into the convergence basin. Deterministic ladder.
  const double scales[] = {1.0, 0.7, 1.5, 0.5, 0.3, 2.0};
  MissionConfig capped = canonical;
  // Healthy solves finish well under 40 cycles; don't let a doomed guess burn
  // the full iteration budget before the next rung gets its turn.
  capped.solver.max_iterations = std::min(canonical.solver.max_iterations, 40);
  for (std::size_t i = 0; i < std::size(scales); ++i) {
    try {
      return solve_eo(capped, pc, scales[i] * guess, tof);
    } catch (const NoConvergence&) {
      if (i + 1 == std::size(scales)) throw;
    }
  }
  throw std::logic_error("unreachable");
}

EoSolution solve_eo(const MissionConfig& canonical, const PerturbationConfig& pc) {
  return solve_eo(canonical, pc, canonical.tof);
}

}  // namespace lowthrust
