#pragma once

// Independent formulation of the fuel-optimal problem that keeps the mass as
// a state and retains its costate: minimize (T_max / c) * integral of the
// on/off throttle delta, with
//   xdot = A + (T_max delta / m) B alpha,   mdot = -T_max delta / c,
//   burn iff (c / m) |B' lam| > 1 - lam_m,
//   lam_m_dot = -dH/dm = -(T_max delta / m^2) |B' lam|,   lam_m(t1) = 0.
// The production solver eliminates lam_m analytically; this oracle checks
// that the elimination does not change the optimal fuel mass.

#include <limits>

#include "lowthrust/control.hpp"
#include "lowthrust/fo.hpp"
#include "lowthrust/integrate.hpp"
#include "lowthrust/root.hpp"
#include "lowthrust/units.hpp"

namespace lowthrust::oracle {

struct RetainedProblem {
  MissionConfig c;
  PerturbationConfig pc;

  // y = [x(6), m, lam(6), lam_m]
  Eigen::VectorXd rate(double t, const Eigen::VectorXd& y) const {
    const MeeState x = y.segment<6>(0);
    const double m = y[6];
    const Costates lam = y.segment<6>(7);
    const double lam_m = y[13];
    const Propulsion& prop = c.propulsion;
    if (x[kP] < 1e-2 || x[kP] > 1e3 || m < 1e-3)
      throw DegenerateOrbit("retained-mass propagation left the domain");

    const auto [A, B] = gve_matrices(x, pc.mu);
    const Vec3 primer = B.transpose() * lam;
    const double pn = primer.norm();
    const bool burn = pn > kZeroPrimerThreshold &&
                      (prop.isp_g0 / m) * pn > 1.0 - lam_m;

    Eigen::VectorXd dy = Eigen::VectorXd::Zero(14);
    MeeState xdot = A;
    double lam_m_dot = 0.0;
    double mdot = 0.0;
    ControlInput u;  // throttle 0, direction 0
    if (burn) {
      u.direction = -primer / pn;
      // Deliver T_max / m of acceleration through the shared costate-rate
      // helper, which scales by T_max / m0.
      u.throttle = prop.m0 / m;
      xdot += B * ((prop.t_max / m) * u.direction);
      mdot = -prop.t_max / prop.isp_g0;
      lam_m_dot = -(prop.t_max / (m * m)) * pn;
    }
    const ControlLaw law{ProblemKind::FO, 0.0, 0.0, 0.0};
    const Costates lam_dot = costate_rate(x, lam, m, t, law, prop, pc, u);

    dy.segment<6>(0) = xdot;
    dy[6] = mdot;
    dy.segment<6>(7) = lam_dot;
    dy[13] = lam_m_dot;
    return dy;
  }

  Eigen::VectorXd propagate_terminal(const Eigen::VectorXd& v) const {
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(14);
    y0.segment<6>(0) = c.x0;
    y0[6] = 1.0;
    y0.segment<6>(7) = v.segment<6>(0);
    y0[13] = v[6];
    OdeOptions opts;
    opts.rel_tol = opts.abs_tol = c.solver.ode_tol;
    return integrate([this](double t, const Eigen::VectorXd& y) { return rate(t, y); },
                     y0, 0.0, c.tof, opts).final_state();
  }

  // Residual of the 7-unknown shooting problem [lam0, lam_m0].
  Eigen::VectorXd residual(const Eigen::VectorXd& v) const {
    try {
      const Eigen::VectorXd yf = propagate_terminal(v);
      Eigen::VectorXd r(7);
      r.segment<6>(0) = yf.segment<6>(0) - c.x1;
      r[6] = yf[13];
      return r;
    } catch (const std::runtime_error&) {
      return Eigen::VectorXd::Constant(7, std::numeric_limits<double>::quiet_NaN());
    }
  }
};

// Solves the retained-mass problem seeded from a reduced solution and returns
// the fuel mass in kg; throws NoConvergence if every seed scale stalls.
inline double retained_fuel_kg(const MissionConfig& canonical, const PerturbationConfig& pc,
                               const FoSolution& reduced) {
  RetainedProblem prob{canonical, pc};
  // The reduced costates scale into the retained problem by roughly
  // m / (c gamma_tr); seed from that map with lam_m0 = 0 and walk a short
  // deterministic ladder if the first scale stalls.
  const double base = 1.0 / (canonical.propulsion.isp_g0 * reduced.gamma_tr);
  RootReport rep;
  for (double scale : {1.0, 0.9, 0.8, 1.1}) {
    Eigen::VectorXd v(7);
    v.segment<6>(0) = reduced.lam0 * (base * scale);
    v[6] = 0.0;
    rep = solve_root([&](const Eigen::VectorXd& u) { return prob.residual(u); }, v, 1e-8, 60);
    if (rep.converged) return canonical.m0_kg * (1.0 - prob.propagate_terminal(rep.x)[6]);
  }
  throw NoConvergence(rep);
}

}  // namespace lowthrust::oracle
