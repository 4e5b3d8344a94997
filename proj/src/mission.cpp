#include "lowthrust/mission.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lowthrust/solar.hpp"

namespace lowthrust {

namespace {

using nlohmann::json;

MeeState parse_elements(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 6)
    throw ValidationError(field, "expected an array of 6 modified equinoctial elements");
  MeeState x;
  for (int i = 0; i < 6; ++i) x[i] = j[i].get<double>();
  if (x[kP] <= 0.0) throw ValidationError(field, "semi-latus rectum must be positive");
  return x;
}

}  // namespace

MissionConfig parse_mission(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }

  MissionConfig c;
  try {
    c.name = j.value("name", "mission");
    const std::string regime = j.at("regime").get<std::string>();
    if (regime == "heliocentric")
      c.regime = Regime::Heliocentric;
    else if (regime == "geocentric")
      c.regime = Regime::Geocentric;
    else
      throw ValidationError("regime", "must be 'heliocentric' or 'geocentric'");

    for (const char* key : {"x0", "x1", "isp_s", "t_max_N", "m0_kg"})
      if (!j.contains(key)) throw ValidationError(key, "required field is missing");
    c.x0 = parse_elements(j.at("x0"), "x0");
    c.x1 = parse_elements(j.at("x1"), "x1");

    if (j.contains("tof_days"))
      c.tof_days = j.at("tof_days").get<double>();
    else if (j.contains("tof_upper_days"))
      c.tof_days = j.at("tof_upper_days").get<double>();
    else
      throw ValidationError("tof_days", "either tof_days or tof_upper_days is required");

    c.isp_s = j.at("isp_s").get<double>();
    c.t_max_N = j.at("t_max_N").get<double>();
    c.m0_kg = j.at("m0_kg").get<double>();
    c.j2 = j.value("j2", false);
    c.eclipse = j.value("eclipse", false);
    if (j.contains("epoch")) {
      try {
        c.epoch_jd = parse_epoch_utc(j.at("epoch").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ValidationError("epoch", e.what());
      }
    }

    if (j.contains("solver")) {
      const json& s = j.at("solver");
      c.solver.ode_tol = s.value("ode_tol", c.solver.ode_tol);
      c.solver.shooting_tol = s.value("shooting_tol", c.solver.shooting_tol);
      c.solver.max_iterations = s.value("max_iterations", c.solver.max_iterations);
      c.solver.samples = s.value("samples", c.solver.samples);
      c.solver.delta_eps = s.value("delta_eps", c.solver.delta_eps);
      c.solver.bisection_tol = s.value("bisection_tol", c.solver.bisection_tol);
      if (s.contains("k_steps")) c.solver.k_steps = s.at("k_steps").get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }

  if (c.tof_days <= 0.0) throw ValidationError("tof_days", "must be positive");
  if (c.isp_s <= 0.0) throw ValidationError("isp_s", "must be positive");
  if (c.t_max_N <= 0.0) throw ValidationError("t_max_N", "must be positive");
  if (c.m0_kg <= 0.0) throw ValidationError("m0_kg", "must be positive");
  if (c.eclipse && c.regime != Regime::Geocentric)
    throw ValidationError("eclipse", "eclipse model requires a geocentric mission");
  if (c.eclipse && !c.epoch_jd)
    throw ValidationError("epoch", "eclipse model requires an epoch");
  if (c.solver.ode_tol <= 0.0) throw ValidationError("solver.ode_tol", "must be positive");
  if (c.solver.delta_eps <= 0.0 || c.solver.delta_eps > 1.0)
    throw ValidationError("solver.delta_eps", "must lie in (0, 1]");
  for (std::size_t i = 0; i < c.solver.k_steps.size(); ++i) {
    const double k = c.solver.k_steps[i];
    if (k < 0.0 || k >= 1.0) throw ValidationError("solver.k_steps", "values must lie in [0, 1)");
    if (i > 0 && k <= c.solver.k_steps[i - 1])
      throw ValidationError("solver.k_steps", "values must be strictly ascending");
  }
  return c;
}

MissionConfig load_mission(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mission(buf.str());
}

}  // namespace lowthrust
