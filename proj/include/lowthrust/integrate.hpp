#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "lowthrust/types.hpp"

namespace lowthrust {

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 -> heuristic
  long max_steps = 50'000;  // exhausted budgets read as a failed propagation
};

/// Accepted steps of a Dormand-Prince 5(4) integration, with the continuous
/// extension stored per step so the solution can be sampled anywhere.
class OdeSolution {
 public:
  const std::vector<double>& times() const { return t_; }
  const std::vector<Eigen::VectorXd>& states() const { return y_; }
  double t0() const { return t_.front(); }
  double t1() const { return t_.back(); }
  const Eigen::VectorXd& final_state() const { return y_.back(); }

  /// Dense-output evaluation; t must lie within [t0, t1].
  Eigen::VectorXd eval(double t) const;

 private:
  friend OdeSolution integrate(const OdeRhs&, const Eigen::VectorXd&, double, double,
                               const OdeOptions&);
  std::vector<double> t_;
  std::vector<Eigen::VectorXd> y_;
  std::vector<std::array<Eigen::VectorXd, 5>> interp_;  // per-step coefficients
};

OdeSolution integrate(const OdeRhs& f, const Eigen::VectorXd& y0, double t0, double t1,
                      const OdeOptions& opts = {});

}  // namespace lowthrust
