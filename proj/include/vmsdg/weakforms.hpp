#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "vmsdg/linsolve.hpp"
#include "vmsdg/space.hpp"

namespace vmsdg {

using ScalarFunction = std::function<double(Point)>;

// ---------------------------------------------------------------------------
// Problem description

struct Poisson {
  ScalarFunction forcing;
};

/// a u' - nu u'' = f with constant a and nu (1-D).
struct AdvectionDiffusion {
  double a = 0.0;
  double nu = 1.0;
  ScalarFunction forcing;
};

/// Endpoint values imposed on the end nodal dofs (1-D).
struct StrongDirichlet {
  double left = 0.0;
  double right = 0.0;
};

/// Nitsche-type Dirichlet data with its own penalty (2-D).
struct WeakDirichlet {
  double eta_boundary = 1.0;
  ScalarFunction value;
};

struct ProblemSpec {
  std::variant<Poisson, AdvectionDiffusion> op;
  std::variant<StrongDirichlet, WeakDirichlet> bc;
};

// ---------------------------------------------------------------------------
// Fine-scale models

struct NoModel {};

/// Prescribed fine-scale facet data, one entry per interior facet in facet
/// order. `uprime_left` / `uprime_right` are the one-sided fine-scale values
/// seen from the left and right element.
struct ExplicitModel {
  std::vector<double> phi;
  std::vector<double> theta;
  std::vector<double> uprime_left;
  std::vector<double> uprime_right;
};

struct InteriorPenaltyModel {
  double eta = 1.0;
};

/// Upwind advective flux. The diffusive fine-scale terms are either dropped
/// or taken from `diffusion`.
struct UpwindModel {
  std::optional<ExplicitModel> diffusion;
};

struct InteriorPenaltyUpwindModel {
  double eta = 1.0;
};

using FineScaleInterfaceModel =
    std::variant<NoModel, ExplicitModel, InteriorPenaltyModel, UpwindModel, InteriorPenaltyUpwindModel>;

struct ZeroVolumetric {};

struct ResidualBased {
  bool use_tau = true;
  bool use_gammas = true;
};

using VolumetricFineScaleModel = std::variant<ZeroVolumetric, ResidualBased>;

// ---------------------------------------------------------------------------
// Classical formulations

struct InteriorPenalty {
  double eta = 1.0;
};
struct NIPG {
  double eta = 1.0;
};
struct BaumannOden {};
struct BabuskaZlamal {
  double eta = 1.0;
};
/// Symmetric interior penalty diffusion with the upstream advective trace.
struct UpwindAdvectionIP {
  double eta = 1.0;
};

using ClassicalFormulation =
    std::variant<InteriorPenalty, NIPG, BaumannOden, BabuskaZlamal, UpwindAdvectionIP>;

// ---------------------------------------------------------------------------

/// Averages and jumps of a field at an interior facet point. Jumps are the
/// coefficient of n+ (left minus right).
struct FacetTraces {
  double avg = 0.0;
  double jump = 0.0;
  Vec2 grad_avg;
  double grad_jump = 0.0;
};

FacetTraces jump_average_traces(const CoarseField& field, const Facet& facet, Point x);
FacetTraces jump_average_traces(const CoarseField& field, const Facet& facet);

/// Number of interior facets, and the facet index of each in order.
std::vector<std::size_t> interior_facet_indices(const DGSpace& space);

LinearSystem assemble_poisson_vms(const DGSpace& space, const ProblemSpec& problem,
                                  const FineScaleInterfaceModel& interface_model,
                                  const VolumetricFineScaleModel& volumetric_model);

LinearSystem assemble_addiff_vms(const DGSpace& space, const ProblemSpec& problem,
                                 const FineScaleInterfaceModel& interface_model,
                                 const VolumetricFineScaleModel& volumetric_model);

LinearSystem assemble_classical(const DGSpace& space, const ProblemSpec& problem,
                                const ClassicalFormulation& formulation);

/// Two ways of writing the interior-facet diffusive flux terms.
enum class FluxPath {
  /// <{w}, [grad u]> - sum_K <w, grad u . n_K> over interior facets.
  ElementwiseCollected,
  /// -<[w], {grad u}>.
  JumpAverage,
};

DenseMatrix interior_flux_block(const DGSpace& space, FluxPath path);

/// Two ways of writing the upwind advective facet term (1-D).
enum class UpwindForm {
  /// <[w] a, {u}> + 1/2 <[w], [u] |a . n|>.
  Penalty,
  /// <[w] a, u(upstream)>.
  TraceSelection,
};

DenseMatrix upwind_facet_block(const DGSpace& space, double a, UpwindForm form);

}  // namespace vmsdg
