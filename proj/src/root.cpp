#include "lowthrust/root.hpp"

#include <cmath>
#include <limits>

namespace lowthrust {

std::string to_string(RootStatus s) {
  switch (s) {
    case RootStatus::Converged: return "converged";
    case RootStatus::MaxIterations: return "max iterations";
    case RootStatus::SingularJacobian: return "singular jacobian";
    case RootStatus::NonFiniteResidual: return "non-finite residual";
    case RootStatus::Stalled: return "line search stalled";
  }
  return "unknown";
}

namespace {

// Dogleg step for the model 1/2 |f + J d|^2 within the trust radius.
Eigen::VectorXd dogleg(const Eigen::VectorXd& d_newton, const Eigen::VectorXd& g,
                       const Eigen::MatrixXd& J, double radius) {
  if (d_newton.allFinite() && d_newton.norm() <= radius) return d_newton;

  // Cauchy point: steepest-descent minimizer of the model.
  const double gn2 = g.squaredNorm();
  const double jg2 = (J * g).squaredNorm();
  if (jg2 <= 0.0 || gn2 <= 0.0) return -(radius / std::max(g.norm(), 1e-300)) * g;
  const Eigen::VectorXd d_cauchy = -(gn2 / jg2) * g;
  const double cn = d_cauchy.norm();
  if (cn >= radius || !d_newton.allFinite()) return (radius / cn) * d_cauchy;

  // Walk from the Cauchy point toward the Newton point until the boundary.
  const Eigen::VectorXd w = d_newton - d_cauchy;
  const double a = w.squaredNorm();
  const double b = d_cauchy.dot(w);
  const double c = cn * cn - radius * radius;
  const double s = (-b + std::sqrt(std::max(b * b - a * c, 0.0))) / a;
  return d_cauchy + s * w;
}

}  // namespace

RootReport solve_root(const ResidualFn& F, const Eigen::VectorXd& x0, double tol, int max_iter) {
  // Larger than sqrt(machine eps): shooting residuals carry integrator noise
  // well above machine precision, and a wider stencil averages over it.
  static const double fd_step = 1e-6;
  const long n = x0.size();

  RootReport rep;
  rep.x = x0;
  rep.residual = F(rep.x);
  if (!rep.residual.allFinite()) {
    rep.status = RootStatus::NonFiniteResidual;
    rep.residual_norm = std::numeric_limits<double>::infinity();
    rep.initial_residual_norm = rep.residual_norm;
    return rep;
  }
  if (rep.residual.size() != n) throw std::invalid_argument("solve_root: F must be square");
  rep.residual_norm = rep.residual.lpNorm<Eigen::Infinity>();
  rep.initial_residual_norm = rep.residual_norm;

  double radius = -1.0;  // set from the first Newton step
  Eigen::MatrixXd J(n, n);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (rep.residual_norm <= tol) {
      rep.converged = true;
      rep.status = RootStatus::Converged;
      return rep;
    }

    for (long j = 0; j < n; ++j) {
      Eigen::VectorXd xp = rep.x;
      const double step = fd_step * std::max(1.0, std::abs(xp[j]));
      xp[j] += step;
      Eigen::VectorXd fp = F(xp);
      if (!fp.allFinite()) {
        // Forward difference walked off the domain; retry backward.
        xp[j] = rep.x[j] - step;
        fp = F(xp);
        if (!fp.allFinite()) {
          rep.status = RootStatus::NonFiniteResidual;
          return rep;
        }
        J.col(j) = (rep.residual - fp) / step;
        continue;
      }
      J.col(j) = (fp - rep.residual) / step;
    }
    ++rep.jacobian_evals;
    ++rep.iterations;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    Eigen::VectorXd d_newton;
    if (lu.isInvertible()) {
      d_newton = lu.solve(-rep.residual);
    } else {
      // Rank-deficient: minimum-norm least-squares direction.
      d_newton = J.completeOrthogonalDecomposition().solve(-rep.residual);
    }
    const Eigen::VectorXd g = J.transpose() * rep.residual;
    if ((!d_newton.allFinite() || d_newton.norm() == 0.0) && g.norm() == 0.0) {
      rep.status = RootStatus::SingularJacobian;
      return rep;
    }
    if (radius < 0.0)
      radius = d_newton.allFinite() ? std::max(d_newton.norm(), 1e-3) : 1.0;

    const double f2 = rep.residual.squaredNorm();
    bool accepted = false;
    for (int sub = 0; sub < 60; ++sub) {
      const Eigen::VectorXd d = dogleg(d_newton, g, J, radius);
      const Eigen::VectorXd fn = F(rep.x + d);
      const double predicted = f2 - (rep.residual + J * d).squaredNorm();
      double ratio = -1.0;
      if (fn.allFinite() && predicted > 0.0) ratio = (f2 - fn.squaredNorm()) / predicted;
      if (ratio > 1e-4) {
        rep.x += d;
        rep.residual = fn;
        rep.residual_norm = rep.residual.lpNorm<Eigen::Infinity>();
        if (ratio > 0.75 && d.norm() > 0.9 * radius) radius *= 2.0;
        else if (ratio < 0.25) radius = 0.5 * d.norm();
        accepted = true;
        break;
      }
      radius = 0.5 * std::min(radius, d.norm());
      if (radius < 1e-14 * (1.0 + rep.x.norm())) break;
    }
    if (!accepted) {
      rep.status = RootStatus::Stalled;
      return rep;
    }
  }
  rep.converged = rep.residual_norm <= tol;
  rep.status = rep.converged ? RootStatus::Converged : RootStatus::MaxIterations;
  return rep;
}

}  // namespace lowthrust
