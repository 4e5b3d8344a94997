#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace lowthrust {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

// Modified equinoctial elements [p, f, g, h, k, L]. L is stored unwrapped so
// multi-revolution targets keep their revolution count.
using MeeState = Vec6;

// Adjoint vector paired with MeeState, same ordering.
using Costates = Vec6;

enum MeeIndex : int { kP = 0, kF = 1, kG = 2, kH = 3, kK = 4, kL = 5 };

struct DegenerateOrbit : std::runtime_error {
  explicit DegenerateOrbit(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveSemiLatus : DegenerateOrbit {
  NonPositiveSemiLatus() : DegenerateOrbit("semi-latus rectum must be positive") {}
};

struct RetrogradeSingularity : std::runtime_error {
  RetrogradeSingularity() : std::runtime_error("equinoctial elements are singular for i = 180 deg") {}
};

struct ZeroPrimer : std::runtime_error {
  ZeroPrimer() : std::runtime_error("primer vector norm below threshold; thrust direction undefined") {}
};

struct NegativeDeltaV : std::invalid_argument {
  NegativeDeltaV() : std::invalid_argument("delta-v must be non-negative") {}
};

struct EpochUnavailable : std::runtime_error {
  EpochUnavailable() : std::runtime_error("eclipse model enabled but no epoch was provided") {}
};

struct StepSizeUnderflow : std::runtime_error {
  explicit StepSizeUnderflow(double t)
      : std::runtime_error("integrator step size underflow at t = " + std::to_string(t)) {}
};

struct SingularTransition : std::runtime_error {
  SingularTransition() : std::runtime_error("linearized transition block is numerically singular") {}
};

}  // namespace lowthrust
