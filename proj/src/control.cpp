#include "lowthrust/control.hpp"

#include <cmath>
#include <limits>

namespace lowthrust {

Vec3 optimal_direction(const Vec3& primer) {
  const double n = primer.norm();
  if (n < kZeroPrimerThreshold) throw ZeroPrimer();
  return -primer / n;
}

double switching_function(const Vec3& primer, double gamma_tr) {
  return gamma_tr - primer.norm();
}

double throttle(const ControlLaw& law, const Vec3& primer, double m, double m0) {
  switch (law.kind) {
    case ProblemKind::EO:
      return primer.norm();
    case ProblemKind::FO: {
      const double rho = switching_function(primer, law.gamma_tr);
      return rho < 0.0 ? m0 / m : 0.0;  // sgn(0) treated as coast
    }
    case ProblemKind::SFO: {
      const double rho = switching_function(primer, law.gamma_tr);
      return m0 / (2.0 * m) * (1.0 - std::tanh(rho / (1.0 - law.smoothing_k)));
    }
    case ProblemKind::TO:
      return m0 / m;
  }
  return 0.0;
}

ControlInput optimal_control(const ControlLaw& law, const Vec3& primer, double m, double m0) {
  ControlInput u;
  if (primer.norm() < kZeroPrimerThreshold) {
    // Direction undefined; TO still commands full throttle along an arbitrary axis.
    if (law.kind == ProblemKind::TO) {
      u.throttle = m0 / m;
      u.direction = Vec3::UnitY();
    }
    return u;
  }
  u.throttle = throttle(law, primer, m, m0);
  u.direction = optimal_direction(primer);
  return u;
}

double hamiltonian(const MeeState& x, const Costates& lam, double m, double t,
                   const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc) {
  const Mat63 B = gve_matrices(x, pc.mu).second;
  const ControlInput u = optimal_control(law, B.transpose() * lam, m, prop.m0);
  return hamiltonian(x, lam, m, t, law, prop, pc, u);
}

double hamiltonian(const MeeState& x, const Costates& lam, double m, double t,
                   const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc,
                   const ControlInput& u) {
  auto [A, B] = gve_matrices(x, pc.mu);
  const Vec3 primer = B.transpose() * lam;

  const double accel = prop.t_max / prop.m0;
  double nu = 0.0;
  if (pc.eclipse_enabled) nu = eclipse_factor(x, t, pc);
  const double delivered = (1.0 - pc.eclipse_scale * nu) * u.throttle;

  double H = lam.dot(A) + primer.dot(u.direction) * accel * delivered;
  if (pc.j2_enabled) {
    const double w = 1.0 + x[kF] * std::cos(x[kL]) + x[kG] * std::sin(x[kL]);
    H += primer.dot(j2_accel(x, x[kP] / w, pc));
  }

  switch (law.kind) {
    case ProblemKind::EO:
      H += 0.5 * accel * u.throttle * u.throttle;
      break;
    case ProblemKind::SFO:
    case ProblemKind::FO:
      H += law.gamma_tr * accel * delivered;
      break;
    case ProblemKind::TO:
      H += law.beta_t;
      break;
  }
  return H;
}

Costates costate_rate(const MeeState& x, const Costates& lam, double m, double t,
                      const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc) {
  if (law.kind == ProblemKind::SFO) {
    // The smoothed throttle is an explicit function of the state, so its
    // variation belongs in dH/dx; the feedback law is smooth everywhere.
    static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    Costates rate;
    MeeState xp = x;
    for (int i = 0; i < 6; ++i) {
      const double step = cbrt_eps * std::max(1.0, std::abs(x[i]));
      xp[i] = x[i] + step;
      const double hp = hamiltonian(xp, lam, m, t, law, prop, pc);
      xp[i] = x[i] - step;
      const double hm = hamiltonian(xp, lam, m, t, law, prop, pc);
      xp[i] = x[i];
      rate[i] = -(hp - hm) / (2.0 * step);
    }
    return rate;
  }
  // For the exact laws the costate equation holds the control at its value on
  // the current arc: the minimizing control makes the extra terms vanish
  // (envelope theorem), and re-deriving the bang-bang control at perturbed
  // states would flip the thrust branch whenever the switching function sits
  // inside the stencil.
  const Mat63 B = gve_matrices(x, pc.mu).second;
  const ControlInput u = optimal_control(law, B.transpose() * lam, m, prop.m0);
  return costate_rate(x, lam, m, t, law, prop, pc, u);
}

Costates costate_rate(const MeeState& x, const Costates& lam, double m, double t,
                      const ControlLaw& law, const Propulsion& prop, const PerturbationConfig& pc,
                      const ControlInput& u) {
  static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  Costates rate;
  MeeState xp = x;
  for (int i = 0; i < 6; ++i) {
    const double step = cbrt_eps * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + step;
    const double hp = hamiltonian(xp, lam, m, t, law, prop, pc, u);
    xp[i] = x[i] - step;
    const double hm = hamiltonian(xp, lam, m, t, law, prop, pc, u);
    xp[i] = x[i];
    rate[i] = -(hp - hm) / (2.0 * step);
  }
  return rate;
}

}  // namespace lowthrust
