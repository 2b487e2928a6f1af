#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vmsdg/diagnostics.hpp"
#include "vmsdg/linsolve.hpp"

namespace vmsdg {

/// Invalid configuration or model/operator mismatch.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The linear solver could not produce a solution.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One discretised problem. Dirichlet data are taken from `exact`.
struct CaseConfig {
  int dim = 1;
  /// "poisson" or "advection_diffusion"
  std::string op = "poisson";
  double a = 0.0;
  double nu = 1.0;
  std::string forcing = "0";
  std::string exact;
  double x0 = 0.0;
  double x1 = 1.0;
  /// Elements (1-D) or squares per side (2-D, two triangles each).
  std::size_t elements = 3;
  /// "sw_ne" or "nw_se" (2-D)
  std::string diagonal = "sw_ne";
  int order = 1;
  /// none | explicit_difference | explicit_l2 | interior_penalty | upwind |
  /// interior_penalty_upwind
  std::string interface_model = "none";
  /// Diffusive fine-scale data used together with the upwind model:
  /// none | explicit_difference | explicit_l2
  std::string upwind_diffusion = "none";
  /// none | tau | gammas | tau_gammas
  std::string volumetric_model = "none";
  double eta = 1.0;
  double eta_boundary = 1.0;
  /// Taylor distance. With interior_penalty_upwind, eta is derived from it.
  std::optional<double> d;
};

struct ExperimentConfig {
  /// E1..E10 or "custom".
  std::string id = "custom";
  CaseConfig base;
  /// Order sweep; empty means base.order only.
  std::vector<int> orders;
  std::vector<std::string> diagonals;
  std::size_t samples_per_element = 200;
  std::string output_dir;
};

struct CaseResult {
  CaseConfig config;
  std::shared_ptr<const DGSpace> space;
  std::shared_ptr<const CoarseField> coarse;
  ExactSolution exact;
  LinearSystem system;
  Solution solution;
  DiagnosticsReport report;
};

/// Assembles, solves and analyses one case. Throws ConfigError or
/// SolverFailure.
CaseResult solve_case(const CaseConfig& config);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// "<=" or ">"
  std::string comparison = "<=";
  bool pass = false;
  /// Floors that encode a qualitative statement rather than an identity.
  bool qualitative = false;
};

struct SampleRow {
  std::size_t element = 0;
  /// '+' / '-' for the one-sided trace at an element end point (limit from
  /// the right / left), '0' inside. On triangles '+' marks edge points.
  char side = '0';
  Point x;
  double u_exact = 0.0;
  double u_coarse = 0.0;
};

struct ExperimentResult {
  std::string id;
  int dim = 1;
  nlohmann::ordered_json config_echo;
  nlohmann::ordered_json diagnostics;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::vector<SampleRow> samples;
  bool passed() const;
};

struct ExperimentInfo {
  std::string id;
  std::string description;
  std::string figure;
};

std::vector<ExperimentInfo> list_experiments();
std::string format_experiment_list();

/// Default configuration of E1..E10 (or an empty custom config).
ExperimentConfig default_config(const std::string& id);

nlohmann::ordered_json to_json(const ExperimentConfig& config);
/// Keys not present keep the defaults of `config.id`'s experiment.
ExperimentConfig config_from_json(const nlohmann::json& j);
/// key=value; the value is read as JSON, falling back to a plain string.
void apply_override(ExperimentConfig& config, const std::string& assignment);

ExperimentResult run_experiment(const ExperimentConfig& config);

void write_solution_csv(const ExperimentResult& result, std::ostream& out);
nlohmann::ordered_json report_json(const ExperimentResult& result);

/// Reference column values (mean loop integral of {u'}, mean integral of u')
/// for p = 1..6.
struct TableRow {
  int p;
  double avg_uprime_loop;
  double uprime_integral;
};
const std::vector<TableRow>& reference_table();

}  // namespace vmsdg
