#pragma once

#include <vector>

#include "vmsdg/geometry.hpp"

namespace vmsdg {

/// Points and positive weights on a reference domain together with the
/// polynomial degree the rule integrates exactly.
struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int exactness = 0;

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre on [-1, 1], 1 <= n <= 64.
QuadratureRule gauss_rule_1d(int n);

/// Gauss-Lobatto-Legendre nodes on [-1, 1] (n >= 2), ascending.
std::vector<double> gauss_lobatto_nodes(int n);

/// Collapsed-coordinate Gauss rule on the triangle {(0,0), (1,0), (0,1)},
/// exact for polynomials of total degree <= `degree` (1..20).
QuadratureRule triangle_rule(int degree);

/// Legendre polynomial P_n(x) and its derivative.
void legendre(int n, double x, double& value, double& derivative);

}  // namespace vmsdg
