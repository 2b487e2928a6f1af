#pragma once

#include <optional>
#include <vector>

#include "vmsdg/projections.hpp"

namespace vmsdg {

struct DiagnosticsParams {
  /// Penalties of the interior-penalty model on interior facets and on the
  /// domain boundary. Both are required in 2-D.
  std::optional<double> eta_interior;
  std::optional<double> eta_boundary;
  /// Taylor distance; defaults to h/(2 eta), or h/(|a| h/nu + 2 eta) when
  /// advection is set.
  std::optional<double> d;
  /// Advection data of the interior-penalty-upwind model (a, nu).
  std::optional<std::pair<double, double>> advection;
};

/// Fine-scale quantities at an interior facet midpoint, u' = u - ubar.
struct FacetDiagnostics {
  std::size_t facet = 0;
  Point x;
  double uprime_left = 0.0;
  double uprime_right = 0.0;
  double avg_uprime = 0.0;
  /// {grad u'} . n+
  double avg_grad_uprime = 0.0;
  /// [ubar] . n+
  double jump_ubar = 0.0;
  std::optional<double> taylor_residual;
  /// {grad u'} + (eta/h)[ubar] (interior penalty) or
  /// nu {grad u'} + (|a|/2 + nu eta/h)[ubar] (interior penalty with upwinding).
  std::optional<double> model_residual;
};

struct ElementDiagnostics {
  /// Integrals of u' x^(n-1), n = 1..max(p-1, 1) (1-D); integral of u' (2-D).
  std::vector<double> moments;
  // 2-D boundary-loop integrals.
  /// sum over interior edges of {grad u'}.n_K + (eta/h)[ubar].n_K plus
  /// boundary edges of grad u'.n - (eta/h) u'. Vanishes for the IP solution.
  std::optional<double> loop_identity;
  /// The same with the penalty acting on [u'] instead of [ubar] (and +u' on
  /// the boundary).
  std::optional<double> loop_identity_alt;
  /// Integral of {u'} over the interior edges of the element; the average
  /// is not defined on the domain boundary.
  std::optional<double> avg_uprime_loop;
  /// Loop integral of |grad u . n|.
  std::optional<double> flux_magnitude;
};

struct DiagnosticsReport {
  std::vector<FacetDiagnostics> facets;
  std::vector<ElementDiagnostics> elements;
  /// max_K of the flux loop (2-D), the scale for the loop identity.
  double flux_scale = 0.0;
  /// max |u| over element quadrature points.
  double solution_scale = 0.0;
  double l2_error = 0.0;
  double max_nodal_error = 0.0;
};

DiagnosticsReport fine_scale_diagnostics(const ExactSolution& exact, const CoarseField& coarse,
                                         const DiagnosticsParams& params);

/// Table columns: max_K |loop_identity|, mean_K |avg_uprime_loop|,
/// mean_K |moments[0]|.
struct LoopSummary {
  double identity_max = 0.0;
  double identity_alt_max = 0.0;
  double avg_uprime_mean = 0.0;
  double uprime_integral_mean = 0.0;
};

LoopSummary summarize_loops(const DiagnosticsReport& report);

}  // namespace vmsdg
