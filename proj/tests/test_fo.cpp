#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "lowthrust/fo.hpp"
#include "lowthrust/mission.hpp"
#include "lowthrust/units.hpp"

using namespace lowthrust;

namespace {

const std::string kMissionDir = MISSION_DIR;

MissionConfig load_canonical(const std::string& file) {
  return canonicalize(load_mission(kMissionDir + "/" + file));
}

}  // namespace

TEST_CASE("threshold bisection on a triangular profile with frozen mass") {
  // Triangle ramping 0 -> 1 -> 0 over [0, 1]. The time spent above a level g
  // is 1 - g, so matching the profile delta-v (area 1/2) forces the threshold
  // to exactly 1/2. A huge exhaust velocity freezes the mass at m0.
  const int n = 2001;
  Eigen::VectorXd t(n), ge(n);
  for (int i = 0; i < n; ++i) {
    t[i] = double(i) / (n - 1);
    ge[i] = 1.0 - 2.0 * std::abs(t[i] - 0.5);
  }
  Propulsion prop;
  prop.t_max = 1.0;
  prop.isp_g0 = 1e12;
  prop.m0 = 1.0;
  const double gamma_tr = gamma_tr_from_profile(t, ge, prop, 1e-9);
  CHECK(std::abs(gamma_tr - 0.5) < 1e-6);
}

TEST_CASE("threshold of an all-zero profile is zero") {
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(11, 0.0, 1.0);
  Eigen::VectorXd ge = Eigen::VectorXd::Zero(11);
  Propulsion prop;
  prop.t_max = 1.0;
  prop.isp_g0 = 2.0;
  prop.m0 = 1.0;
  CHECK(gamma_tr_from_profile(t, ge, prop, 1e-9) == 0.0);
}

TEST_CASE("comet rendezvous fuel-optimal pipeline") {
  const MissionConfig c = load_canonical("tempel1.json");
  const FoSolution sol = solve_fo(c);

  CHECK(std::abs(sol.fuel_kg - 348.26) < 1.0);
  CHECK(std::abs(sol.gamma_tr - 0.4781) < 0.01);

  // The smoothing ladder walks all scheduled k values before the exact solve.
  REQUIRE(sol.log.size() == c.solver.k_steps.size() + 1);
  for (std::size_t i = 0; i < c.solver.k_steps.size(); ++i) {
    CHECK(sol.log[i].stage == "sfo");
    CHECK(sol.log[i].param == doctest::Approx(c.solver.k_steps[i]));
  }
  CHECK(sol.log.back().stage == "fo");
  CHECK(sol.total_iterations > 0);
  CHECK(sol.initial_residual > 0.0);

  // Bang-bang structure: thrust only where the switching function is
  // negative, so the product never goes positive.
  for (const auto& s : sol.trajectory.samples) CHECK(s.throttle * s.rho <= 1e-12);

  // Fuel and delta-v tie together through the rocket equation.
  CHECK(sol.fuel_kg ==
        doctest::Approx(c.m0_kg * (1.0 - std::exp(-sol.dv / c.propulsion.isp_g0))));

  // Terminal constraint.
  const Vec6 err = sol.trajectory.back().x - c.x1;
  CHECK(err.lpNorm<Eigen::Infinity>() <= 1e-7);
}

TEST_CASE("multi-revolution asteroid rendezvous fuel-optimal pipeline") {
  const MissionConfig c = load_canonical("dionysus.json");
  const FoSolution sol = solve_fo(c);
  CHECK(std::abs(sol.fuel_kg - 1280.70) < 3.0);
  CHECK(std::abs(sol.gamma_tr - 0.5389) < 0.01);
  for (const auto& s : sol.trajectory.samples) CHECK(s.throttle * s.rho <= 1e-12);
  const Vec6 err = sol.trajectory.back().x - c.x1;
  CHECK(err.lpNorm<Eigen::Infinity>() <= 1e-7);
}
