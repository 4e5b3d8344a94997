#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lowthrust/mission.hpp"
#include "lowthrust/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string mission_path;
  std::string out_dir;
  lowthrust::RunOverrides ov;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("mission", args.mission_path, "mission JSON file")->required();
  cmd->add_option("--out", args.out_dir, "output directory for summary/trajectory/continuation");
  cmd->add_option("--tol", args.ov.ode_tol, "ODE tolerance");
  cmd->add_option("--k-steps", args.ov.k_steps, "smoothing continuation schedule");
  cmd->add_option("--deps", args.ov.delta_eps, "eclipse continuation step");
  cmd->add_option("--samples", args.ov.samples, "uniform trajectory samples");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indirect low-thrust transfer optimization (EO/FO/TO)"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* eo = app.add_subcommand("solve-eo", "energy-optimal transfer");
  add_common(eo, args);

  auto* fo = app.add_subcommand("solve-fo", "fuel-optimal transfer");
  add_common(fo, args);
  fo->add_option("--pin-gamma-tr", args.ov.pin_gamma_tr, "skip the bisection and pin Gamma_TR");

  auto* to = app.add_subcommand("solve-to", "time-optimal transfer");
  add_common(to, args);
  to->add_option("--pin-beta-t", args.ov.pin_beta_t, "skip the transversality fit and pin beta_t");

  auto* sw = app.add_subcommand("sweep", "re-run with the scaling parameter pinned over a grid");
  add_common(sw, args);
  std::string param;
  std::vector<double> grid;
  sw->add_option("--param", param, "gamma_tr or beta_t")->required();
  sw->add_option("--grid", grid, "values to pin")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const lowthrust::MissionConfig config = lowthrust::load_mission(args.mission_path);
    if (sw->parsed()) {
      const auto rows = lowthrust::sweep(param, config, grid, args.ov);
      const std::string csv = lowthrust::sweep_csv(rows);
      std::cout << csv;
      if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        std::ofstream(std::filesystem::path(args.out_dir) / "sweep.csv") << csv;
      }
      for (const auto& r : rows)
        if (!r.converged) return 2;
      return 0;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const auto art = lowthrust::run(command, config, args.out_dir, args.ov);
    std::cout << art.summary_json;
    return 0;
  } catch (const lowthrust::ContinuationStalled& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
