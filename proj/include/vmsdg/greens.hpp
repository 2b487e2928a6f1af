#pragma once

#include <utility>

namespace vmsdg {

/// Constant coefficients of the 1-D adjoint problem -a g' - nu g'' = delta on
/// an element of size h.
struct ADParams {
  double a = 0.0;
  double nu = 1.0;
  double h = 1.0;
};

/// Element averages of the Green's function (tau) and of its boundary
/// derivatives (gamma0 at the left node, gamma1 at the right node).
struct GreenQuantities {
  double tau = 0.0;
  double gamma0 = 0.0;
  double gamma1 = 0.0;
};

/// |a h / nu| below which the Taylor branches are used.
inline constexpr double kSeriesThreshold = 0.25;

/// Green's function on [0, h] with source x in (0, h), evaluated at y.
double green_eval(const ADParams& p, double x, double y);

/// d/dy of the Green's function at y = 0 (first) and y = h (second).
std::pair<double, double> green_boundary_derivatives(const ADParams& p, double x);

double tau(const ADParams& p);
std::pair<double, double> gammas(const ADParams& p);
GreenQuantities green_quantities(const ADParams& p);

// Individual branches, exposed for continuity checks.
double tau_closed_form(const ADParams& p);
double tau_series(const ADParams& p);
std::pair<double, double> gammas_closed_form(const ADParams& p);
std::pair<double, double> gammas_series(const ADParams& p);

/// Independent quadrature of the defining integrals of tau and gamma using
/// composite Gauss panels with `n_quad` points each.
GreenQuantities tau_gamma_oracle(const ADParams& p, int n_quad);

}  // namespace vmsdg
