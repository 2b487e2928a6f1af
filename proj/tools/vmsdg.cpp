#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmsdg/experiments.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kSolverFailure = 3 };

void write_artifacts(const vmsdg::ExperimentResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream csv(dir / "solution.csv", std::ios::binary);
  vmsdg::write_solution_csv(result, csv);
  std::ofstream report(dir / "report.json", std::ios::binary);
  report << vmsdg::report_json(result).dump(2) << '\n';
  if (!csv || !report) throw std::runtime_error("cannot write to " + dir.string());
}

int execute(vmsdg::ExperimentConfig config, const std::string& out_dir) {
  const std::string dir = out_dir.empty() ? (config.output_dir.empty() ? "out/" + config.id : config.output_dir)
                                          : out_dir;
  const auto result = vmsdg::run_experiment(config);
  write_artifacts(result, dir);
  for (const auto& c : result.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.value << ' ' << c.comparison << ' '
              << c.threshold << '\n';
  std::cout << "wrote " << (fs::path(dir) / "solution.csv").string() << " and "
            << (fs::path(dir) / "report.json").string() << '\n';
  return result.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VMS discontinuous Galerkin experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the available experiments");

  auto* run = app.add_subcommand("run", "Run one of the built-in experiments");
  std::string experiment, run_out;
  std::vector<std::string> overrides;
  run->add_option("--experiment", experiment, "Experiment id (E1..E10)")->required();
  run->add_option("--out", run_out, "Output directory (default out/<id>)");
  run->add_option("--override", overrides, "Configuration override key=value")->take_all();

  auto* solve = app.add_subcommand("solve", "Solve a problem described by a JSON configuration");
  std::string config_file, solve_out;
  solve->add_option("--config", config_file, "Configuration file")->required();
  solve->add_option("--out", solve_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*list) {
      std::cout << vmsdg::format_experiment_list();
      return kOk;
    }
    if (*run) {
      auto config = vmsdg::default_config(experiment);
      if (experiment == "custom") throw vmsdg::ConfigError("use `solve --config` for custom problems");
      for (const auto& o : overrides) vmsdg::apply_override(config, o);
      return execute(config, run_out);
    }
    std::ifstream in(config_file);
    if (!in) throw vmsdg::ConfigError("cannot open " + config_file);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw vmsdg::ConfigError(config_file + ": invalid JSON");
    return execute(vmsdg::config_from_json(j), solve_out);
  } catch (const vmsdg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const vmsdg::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}
