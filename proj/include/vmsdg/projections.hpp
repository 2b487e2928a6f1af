#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "vmsdg/space.hpp"
#include "vmsdg/weakforms.hpp"

namespace vmsdg {

struct ExactSolution {
  std::function<double(Point)> value;
  std::function<Vec2(Point)> gradient;
};

/// Largest deviation between `gradient` and centred differences of `value`
/// over the given points.
double gradient_self_check(const ExactSolution& exact, const std::vector<Point>& points,
                           double step = 1e-6);

/// Continuous piecewise-linear interpolant embedded in the broken space.
CoarseField h1_interpolant(const ExactSolution& exact, std::shared_ptr<const DGSpace> space);

/// Element-wise L2 projection with the two domain end values fixed to the
/// exact boundary values.
CoarseField l2_projection(const ExactSolution& exact, std::shared_ptr<const DGSpace> space);

/// Centred-difference rule for the average fine-scale gradient on a uniform
/// mesh: theta = u'(x) - (u(x + h) - u(x - h)) / 2h, phi = 0, traces 0.
struct DifferenceRule {};

using ModelReference = std::variant<CoarseField, DifferenceRule>;

ExplicitModel explicit_model_from(const ExactSolution& exact, const DGSpace& space,
                                  const ModelReference& reference);

}  // namespace vmsdg
