#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace lowthrust {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

enum class RootStatus { Converged, MaxIterations, SingularJacobian, NonFiniteResidual, Stalled };

struct RootReport {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  double residual_norm = 0.0;      // infinity norm
  double initial_residual_norm = 0.0;
  int iterations = 0;              // Jacobian-update cycles
  int jacobian_evals = 0;
  bool converged = false;
  RootStatus status = RootStatus::MaxIterations;
};

std::string to_string(RootStatus s);

struct NoConvergence : std::runtime_error {
  RootReport report;
  explicit NoConvergence(RootReport r)
      : std::runtime_error("shooting did not converge (" + to_string(r.status) +
                           "), residual " + std::to_string(r.residual_norm)),
        report(std::move(r)) {}
};

/// Damped Newton iteration with a forward-difference Jacobian and
/// backtracking on the residual norm.
RootReport solve_root(const ResidualFn& F, const Eigen::VectorXd& x0, double tol = 1e-10,
                      int max_iter = 200);

}  // namespace lowthrust
