#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "vmsdg/experiments.hpp"

using namespace vmsdg;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream os;
  write_solution_csv(r, os);
  return os.str();
}

const Check& check_named(const ExperimentResult& r, const std::string& name) {
  for (const Check& c : r.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return r.checks.front();
}

ExperimentConfig small(const std::string& id) {
  ExperimentConfig c = default_config(id);
  c.samples_per_element = 3;
  return c;
}

}  // namespace

TEST_CASE("experiment list") {
  const auto rows = list_experiments();
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == "E" + std::to_string(i + 1));
    CHECK_THAT(rows[i].figure, ContainsSubstring("Fig"));
  }
  CHECK_THAT(rows[3].description, ContainsSubstring("η = 2.5"));
  CHECK_THAT(rows[5].description, ContainsSubstring("18 triangular elements"));
  CHECK_THAT(rows[5].figure, ContainsSubstring("Table 4"));
  const std::string text = format_experiment_list();
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}

TEST_CASE("E1 is nodally exact and flags the inconsistent closed form") {
  const ExperimentResult r = run_experiment(small("E1"));
  const Check& c = check_named(r, "nodal_exactness");
  CHECK(c.pass);
  CHECK(c.value <= 1e-10);
  REQUIRE_FALSE(r.notes.empty());
  CHECK_THAT(r.notes.front(), ContainsSubstring("exact_solution_discrepancy"));
  CHECK(r.passed());
}

TEST_CASE("E6 p = 1 row matches the reference table") {
  ExperimentConfig c = small("E6");
  c.orders = {1};
  c.diagonals = {"sw_ne"};
  const ExperimentResult r = run_experiment(c);
  const auto& row = r.diagnostics.at("table").at("sw_ne").at(0);
  const double col2 = row.at("avg_uprime_loop_mean").get<double>();
  const double col3 = row.at("uprime_integral_mean").get<double>();
  CHECK(col2 / 2.39e-3 < 3.0);
  CHECK(2.39e-3 / col2 < 3.0);
  CHECK(col3 / 2.93e-4 < 3.0);
  CHECK(2.93e-4 / col3 < 3.0);
  CHECK(row.at("loop_identity_max").get<double>() <= 1e-9 * row.at("flux_scale").get<double>());
  CHECK(check_named(r, "table_within_factor_3").pass);
}

TEST_CASE("E9 floors are reported as qualitative") {
  const ExperimentResult r = run_experiment(small("E9"));
  CHECK(check_named(r, "tau_nodal_exactness").pass);
  CHECK(check_named(r, "no_upwind_tau_zero_nodal_error").pass);
  CHECK(check_named(r, "upwind_nodal_error_first_elements").qualitative);
  CHECK(check_named(r, "no_upwind_tau_zero_nodal_error").qualitative);
}

TEST_CASE("overrides") {
  ExperimentConfig c = default_config("E4");
  apply_override(c, "eta=4");
  CHECK(c.base.eta == 4.0);
  apply_override(c, "forcing=2*x");
  CHECK(c.base.forcing == "2*x");
  apply_override(c, "elements=5");
  CHECK(c.base.elements == 5);
  apply_override(c, "domain=[0,2]");
  CHECK(c.base.x1 == 2.0);
  CHECK_THROWS_AS(apply_override(c, "no_such_key=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "eta"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "experiment=E2"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "elements=many"), ConfigError);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(default_config("E11"), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"experiment", "E1"}, {"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"orders", {0}}}), ConfigError);

  auto bad = [](auto edit) {
    ExperimentConfig c = default_config("E4");
    edit(c.base);
    return c;
  };
  // Upwinding needs an advection operator.
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) { b.interface_model = "upwind"; })), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) { b.interface_model = "magic"; })), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) { b.eta = -1.0; })), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) { b.forcing = "sin(x"; })), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) { b.exact = "x2"; })), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) { b.volumetric_model = "tau"; })), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) {
                    b.order = 2;
                    b.interface_model = "explicit_difference";
                  })),
                  ConfigError);
  CHECK_THROWS_AS(run_experiment(bad([](CaseConfig& b) {
                    b.dim = 2;
                    b.interface_model = "none";
                  })),
                  ConfigError);
}

TEST_CASE("custom problems from JSON") {
  const ExperimentConfig c = config_from_json({{"operator", "poisson"},
                                               {"forcing", "pi^2*sin(pi*x)"},
                                               {"exact", "sin(pi*x)"},
                                               {"elements", 8},
                                               {"order", 2},
                                               {"interface_model", "interior_penalty"},
                                               {"eta", 10}});
  CHECK(c.id == "custom");
  const ExperimentResult r = run_experiment(c);
  CHECK(check_named(r, "solver_residual").pass);
  CHECK(r.passed());
  const ExperimentConfig back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
}

TEST_CASE("outputs are reproducible and well formed") {
  for (const char* id : {"E3", "E6"}) {
    ExperimentConfig c = small(id);
    if (std::string(id) == "E6") c.orders = {1, 2};
    const ExperimentResult a = run_experiment(c), b = run_experiment(c);
    const std::string csv = csv_of(a);
    CHECK(csv == csv_of(b));
    CHECK(report_json(a).dump(2) == report_json(b).dump(2));
    CHECK(csv.find('\r') == std::string::npos);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK_THAT(header, ContainsSubstring("u_exact,u_coarse,u_fine"));
  }
}

TEST_CASE("1-D samples include both one-sided traces") {
  const ExperimentResult r = run_experiment(small("E2"));
  std::size_t plus = 0, minus = 0;
  for (const SampleRow& s : r.samples) {
    plus += s.side == '+';
    minus += s.side == '-';
  }
  CHECK(plus == 3);
  CHECK(minus == 3);
  const auto j = report_json(r);
  for (const char* key : {"experiment", "config_echo", "diagnostics", "checks", "notes"}) CHECK(j.contains(key));
  for (const auto& c : j.at("checks"))
    for (const char* key : {"name", "value", "threshold", "pass"}) CHECK(c.contains(key));
}
