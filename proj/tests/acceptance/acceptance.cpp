// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "vmsdg/experiments.hpp"
#include "vmsdg/greens.hpp"
#include "vmsdg/weakforms.hpp"

using namespace vmsdg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += (ok ? "" : "FAILED ") + what;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome experiment_checks(const std::string& id, const std::vector<std::string>& only = {}) {
  Outcome o;
  ExperimentConfig cfg = default_config(id);
  cfg.samples_per_element = 2;
  const ExperimentResult r = run_experiment(cfg);
  for (const auto& c : r.checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    note(o, c.pass, id + "." + c.name + " " + sci(c.value) + " " + c.comparison + " " + sci(c.threshold));
  }
  return o;
}

Outcome ip_equivalence() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int p = 1; p <= 3; ++p) {
      for (double eta : {1.0, 2.5, 10.0}) {
        auto mesh = std::make_shared<const Mesh1D>(uniform_mesh_1d(0.0, 1.0, n));
        const DGSpace space(mesh, p);
        ProblemSpec problem{Poisson{[](Point x) { return std::sin(3.0 * x.x) + 1.0; }}, StrongDirichlet{0.3, -0.2}};
        const LinearSystem vms = assemble_poisson_vms(space, problem, InteriorPenaltyModel{eta}, ZeroVolumetric{});
        const LinearSystem ip = assemble_classical(space, problem, InteriorPenalty{eta});
        worst = std::max({worst, (vms.matrix - ip.matrix).cwiseAbs().maxCoeff(),
                          (vms.rhs - ip.rhs).cwiseAbs().maxCoeff()});
      }
    }
  }
  note(o, worst <= 1e-12, "max entry difference " + sci(worst) + " <= 1e-12 over 72 configurations");
  return o;
}

Outcome green_quantities_check() {
  Outcome o;
  double worst = 0.0;
  for (double a : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0})
    for (double nu : {0.01, 0.15, 1.0})
      for (double h : {0.1, 1.0 / 3.0, 1.0}) {
        const ADParams p{a, nu, h};
        const GreenQuantities g = green_quantities(p);
        const GreenQuantities ref = tau_gamma_oracle(p, 32);
        for (auto [x, y] : {std::pair{g.tau, ref.tau}, std::pair{g.gamma0, ref.gamma0}, std::pair{g.gamma1, ref.gamma1}})
          worst = std::max(worst, std::abs(x - y) / std::abs(y));
      }
  note(o, worst <= 1e-8, "closed form vs quadrature rel " + sci(worst) + " <= 1e-8");

  double lim_tau = 0.0, lim_g0 = 0.0, lim_g1 = 0.0;
  for (double nu : {0.01, 0.15, 1.0})
    for (double h : {0.1, 1.0 / 3.0, 1.0}) {
      const GreenQuantities g = green_quantities({1e-10, nu, h});
      lim_tau = std::max(lim_tau, std::abs(g.tau / (h * h / (12 * nu)) - 1.0));
      lim_g0 = std::max(lim_g0, std::abs(g.gamma0 / (1.0 / (2 * nu)) - 1.0));
      lim_g1 = std::max(lim_g1, std::abs(g.gamma1 / (1.0 / (2 * nu)) - 1.0));
    }
  note(o, lim_tau <= 1e-6, "tau -> h^2/(12 nu) rel " + sci(lim_tau));
  note(o, lim_g0 <= 1e-6, "gamma0 -> 1/(2 nu) rel " + sci(lim_g0));
  note(o, lim_g1 <= 1e-6, "gamma1 -> 1/(2 nu) rel " + sci(lim_g1));

  double sym = 0.0;
  for (double a : {1e-10, 1e-3, 0.1, 0.5, 1.0, 30.0})
    for (double nu : {0.01, 0.15, 1.0})
      for (double h : {0.1, 1.0 / 3.0, 1.0}) {
        const GreenQuantities plus = green_quantities({a, nu, h});
        const GreenQuantities minus = green_quantities({-a, nu, h});
        sym = std::max(sym, std::abs(minus.gamma0 + plus.gamma1) / std::abs(plus.gamma1));
      }
  note(o, sym <= 1e-12, "gamma0(-a) = -gamma1(a) rel " + sci(sym));

  bool finite = true;
  for (double z = -700.0; z <= 700.0; z += 0.37) {
    const GreenQuantities g = green_quantities({z, 1.0, 1.0});
    finite = finite && std::isfinite(g.tau) && std::isfinite(g.gamma0) && std::isfinite(g.gamma1);
  }
  for (double z : {-700.0, 700.0}) {
    const GreenQuantities g = green_quantities({z, 1.0, 1.0});
    finite = finite && std::isfinite(g.tau) && std::isfinite(g.gamma0) && std::isfinite(g.gamma1);
  }
  note(o, finite, "finite for |ah/nu| <= 700");
  return o;
}

double l2_error_ip(int p, std::size_t n) {
  CaseConfig c;
  c.forcing = "pi^2*sin(pi*x)";
  c.exact = "sin(pi*x)";
  c.elements = n;
  c.order = p;
  c.interface_model = "interior_penalty";
  c.eta = 10.0;
  return solve_case(c).report.l2_error;
}

Outcome convergence() {
  Outcome o;
  for (int p : {1, 2}) {
    std::vector<double> err;
    for (std::size_t n : {4, 8, 16, 32}) err.push_back(l2_error_ip(p, n));
    std::ostringstream rates;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      const double r = std::log2(err[i] / err[i + 1]);
      ok = ok && r >= p + 0.8 && r <= p + 1.3;
      rates << (i ? ", " : "") << sci(r);
    }
    note(o, ok, "p=" + std::to_string(p) + " rates " + rates.str() + " in [" + sci(p + 0.8) + ", " + sci(p + 1.3) + "]");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"E1 nodal exactness", [] { return experiment_checks("E1"); }},
      {"E2 explicit theta", [] { return experiment_checks("E2"); }},
      {"E3 L2 recovery", [] { return experiment_checks("E3"); }},
      {"IP equivalence", ip_equivalence},
      {"IP fine-scale identities", [] {
         return experiment_checks("E4", {"avg_uprime_zero", "avg_grad_uprime_model", "taylor_residual"});
       }},
      {"higher-order moments", [] {
         return experiment_checks("E5", {"p2_moment_x0", "p3_moment_x0", "p3_moment_x1"});
       }},
      {"2-D loop integrals", [] { return experiment_checks("E6"); }},
      {"E7/E8 advection-diffusion", [] {
         Outcome a = experiment_checks("E7"), b = experiment_checks("E8");
         return Outcome{a.pass && b.pass, a.detail + "; " + b.detail};
       }},
      {"tau/gamma verification", green_quantities_check},
      {"E9 upwinding", [] { return experiment_checks("E9"); }},
      {"E10 IP with upwinding", [] { return experiment_checks("E10"); }},
      {"convergence sanity", convergence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
