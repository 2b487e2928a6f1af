#pragma once

#include <vector>

#include "vmsdg/geometry.hpp"

namespace vmsdg {

inline constexpr int kMaxOrder = 6;

/// Lagrange basis of order p on the Gauss-Lobatto-Legendre nodes of [-1, 1].
/// `deriv` selects the value (0), first (1) or second (2) derivative in xi.
std::vector<double> nodal_basis_1d(int p, double xi, int deriv = 0);

/// GLL nodes used by nodal_basis_1d.
const std::vector<double>& nodal_points_1d(int p);

/// Number of modes of the complete polynomial space of order p on a triangle.
constexpr std::size_t triangle_mode_count(int p) { return static_cast<std::size_t>((p + 1) * (p + 2) / 2); }

/// Orthonormal hierarchical (Dubiner) basis on the reference triangle
/// {(0,0), (1,0), (0,1)}; modes are ordered by total degree.
std::vector<double> modal_basis_triangle(int p, Point ref);

/// Reference gradients of modal_basis_triangle.
std::vector<Vec2> modal_basis_triangle_gradients(int p, Point ref);

/// Orthonormal Jacobi polynomial P_n^{(alpha, beta)} on [-1, 1].
double jacobi_p(int n, double alpha, double beta, double x);

}  // namespace vmsdg
