#include "lowthrust/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lowthrust/units.hpp"

namespace lowthrust {

namespace {

using nlohmann::json;

std::string trajectory_csv(const Trajectory& traj, const UnitSystem& units, double m0_kg) {
  std::ostringstream out;
  out.precision(15);
  out << "t_days,p,f,g,h,k,L,mass_kg,throttle,rho,alpha_r,alpha_t,alpha_n,nu\n";
  for (const auto& s : traj.samples) {
    out << units.canonical_to_days(s.t) << ',' << s.x[kP] << ',' << s.x[kF] << ',' << s.x[kG]
        << ',' << s.x[kH] << ',' << s.x[kK] << ',' << s.x[kL] << ',' << s.mass * m0_kg << ','
        << s.throttle << ',' << s.rho << ',' << s.direction[0] << ',' << s.direction[1] << ','
        << s.direction[2] << ',' << s.nu << '\n';
  }
  return out.str();
}

std::string continuation_csv(const std::vector<ContinuationStep>& log) {
  std::ostringstream out;
  out.precision(15);
  out << "stage,param,iterations,residual,fuel_kg,lam_p,lam_f,lam_g,lam_h,lam_k,lam_L\n";
  for (const auto& s : log) {
    out << s.stage << ',' << s.param << ',' << s.iterations << ',' << s.residual << ','
        << s.fuel_kg;
    for (int i = 0; i < 6; ++i) out << ',' << s.lam0[i];
    out << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

MissionConfig apply_overrides(const MissionConfig& config, const RunOverrides& o) {
  MissionConfig c = config;
  if (o.ode_tol) c.solver.ode_tol = *o.ode_tol;
  if (o.k_steps) c.solver.k_steps = *o.k_steps;
  if (o.delta_eps) c.solver.delta_eps = *o.delta_eps;
  if (o.samples) c.solver.samples = *o.samples;
  return c;
}

RunArtifacts run(const std::string& command, const MissionConfig& config,
                 const std::string& out_dir, const RunOverrides& overrides) {
  const MissionConfig c = canonicalize(apply_overrides(config, overrides));
  RunArtifacts art;

  json summary;
  summary["mission"] = c.name;
  summary["command"] = command;

  const auto start = std::chrono::steady_clock::now();
  std::vector<ContinuationStep> log;
  const Trajectory* traj = nullptr;

  EoSolution eo;
  FoSolution fo;
  ToSolution to;

  if (command == "solve-eo") {
    PerturbationConfig pc = make_perturbations(c);
    pc.eclipse_enabled = false;  // EO is solved without eclipses
    pc.eclipse_scale = 0.0;
    eo = solve_eo(c, pc);
    art.fuel_kg = eo.fuel_kg;
    art.dv_ms = eo.dv * c.units.velocity_kms() * 1000.0;
    art.tof_days = c.tof_days;
    art.iterations = eo.report.iterations;
    traj = &eo.trajectory;
    for (int i = 0; i < 6; ++i) summary["lam0"][i] = eo.lam0[i];
  } else if (command == "solve-fo") {
    fo = solve_fo(c, overrides.pin_gamma_tr);
    if (c.eclipse) fo = continue_perturbations(c, fo, c.solver.delta_eps);
    art.fuel_kg = fo.fuel_kg;
    art.dv_ms = fo.dv * c.units.velocity_kms() * 1000.0;
    art.tof_days = c.tof_days;
    art.gamma_tr = fo.gamma_tr;
    art.iterations = fo.total_iterations;
    traj = &fo.trajectory;
    log = fo.log;
    summary["gamma_tr"] = fo.gamma_tr;
    summary["initial_residual"] = fo.initial_residual;
    summary["eo_fuel_kg"] = fo.eo.fuel_kg;
    for (int i = 0; i < 6; ++i) summary["lam0"][i] = fo.lam0[i];
  } else if (command == "solve-to") {
    to = solve_to(c, overrides.pin_beta_t);
    art.fuel_kg = to.fuel_kg;
    art.dv_ms = to.dv * c.units.velocity_kms() * 1000.0;
    art.tof_days = to.tof_days;
    art.beta_t = to.beta_t;
    art.iterations = to.total_iterations;
    traj = &to.trajectory;
    log = to.log;
    summary["beta_t"] = to.beta_t;
    summary["tof_guess_days"] = to.tof_guess_days;
    summary["initial_residual"] = to.initial_residual;
    summary["transversality_residual"] = to.transversality_residual;
    for (int i = 0; i < 6; ++i) summary["lam0"][i] = to.lam0[i];
  } else {
    throw std::invalid_argument("unknown command: " + command);
  }

  const auto stop = std::chrono::steady_clock::now();
  art.wall_seconds = std::chrono::duration<double>(stop - start).count();
  art.converged = true;

  summary["fuel_kg"] = art.fuel_kg;
  summary["dv_ms"] = art.dv_ms;
  summary["tof_days"] = art.tof_days;
  summary["iterations"] = art.iterations;
  summary["wall_seconds"] = art.wall_seconds;
  art.summary_json = summary.dump(2) + "\n";
  art.trajectory_csv = trajectory_csv(*traj, c.units, c.m0_kg);
  art.continuation_csv = continuation_csv(log);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_file(dir / "summary.json", art.summary_json);
    write_file(dir / "trajectory.csv", art.trajectory_csv);
    write_file(dir / "continuation.csv", art.continuation_csv);
  }
  return art;
}

std::vector<SweepRow> sweep(const std::string& param, const MissionConfig& config,
                            const std::vector<double>& grid, const RunOverrides& overrides) {
  if (grid.empty()) throw std::invalid_argument("sweep: grid must contain at least one value");
  const MissionConfig c = canonicalize(apply_overrides(config, overrides));

  std::vector<SweepRow> rows;
  const auto run_one = [&](std::optional<double> pinned) {
    SweepRow row;
    row.is_auto = !pinned.has_value();
    try {
      if (param == "gamma_tr") {
        FoSolution fo = solve_fo(c, pinned);
        row.value = fo.gamma_tr;
        row.initial_residual = fo.initial_residual;
        row.iterations = fo.total_iterations;
        row.fuel_kg = fo.fuel_kg;
        row.tof_days = c.tof_days;
      } else if (param == "beta_t") {
        ToSolution to = solve_to(c, pinned);
        row.value = to.beta_t;
        row.initial_residual = to.initial_residual;
        row.iterations = to.total_iterations;
        row.fuel_kg = to.fuel_kg;
        row.tof_days = to.tof_days;
      } else {
        throw std::invalid_argument("sweep: param must be gamma_tr or beta_t");
      }
      row.converged = true;
    } catch (const std::runtime_error&) {
      row.converged = false;
      if (pinned) row.value = *pinned;
    }
    return row;
  };

  for (double v : grid) rows.push_back(run_one(v));
  rows.push_back(run_one(std::nullopt));
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(15);
  out << "value,is_auto,converged,initial_residual,iterations,fuel_kg,tof_days\n";
  for (const auto& r : rows)
    out << r.value << ',' << (r.is_auto ? 1 : 0) << ',' << (r.converged ? 1 : 0) << ','
        << r.initial_residual << ',' << r.iterations << ',' << r.fuel_kg << ',' << r.tof_days
        << '\n';
  return out.str();
}

}  // namespace lowthrust
