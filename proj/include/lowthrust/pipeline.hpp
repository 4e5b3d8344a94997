#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lowthrust/config.hpp"
#include "lowthrust/eo.hpp"
#include "lowthrust/fo.hpp"
#include "lowthrust/to.hpp"

namespace lowthrust {

struct RunOverrides {
  std::optional<double> ode_tol;
  std::optional<std::vector<double>> k_steps;
  std::optional<double> delta_eps;
  std::optional<double> pin_gamma_tr;
  std::optional<double> pin_beta_t;
  std::optional<int> samples;
};

struct RunArtifacts {
  std::string summary_json;                 // Table-style summary record
  std::string trajectory_csv;
  std::string continuation_csv;
  double fuel_kg = 0.0;
  double dv_ms = 0.0;
  double tof_days = 0.0;
  double gamma_tr = 0.0;
  double beta_t = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
  bool converged = false;
};

MissionConfig apply_overrides(const MissionConfig& config, const RunOverrides& o);

/// command is one of solve-eo, solve-fo, solve-to. Writes summary.json,
/// trajectory.csv and continuation.csv under out_dir when it is non-empty.
RunArtifacts run(const std::string& command, const MissionConfig& config,
                 const std::string& out_dir, const RunOverrides& overrides = {});

struct SweepRow {
  double value = 0.0;
  bool is_auto = false;
  bool converged = false;
  double initial_residual = 0.0;
  int iterations = 0;
  double fuel_kg = 0.0;
  double tof_days = 0.0;
};

/// Re-runs a pipeline with the scaling parameter pinned at each grid value,
/// plus one row for the auto-computed value.
std::vector<SweepRow> sweep(const std::string& param, const MissionConfig& config,
                            const std::vector<double>& grid, const RunOverrides& overrides = {});

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace lowthrust
