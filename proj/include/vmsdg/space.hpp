#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vmsdg/mesh.hpp"
#include "vmsdg/quadrature.hpp"

namespace vmsdg {

/// Broken polynomial space of order p: nodal GLL Lagrange on intervals,
/// orthonormal modal on triangles. Element K owns the contiguous dof range
/// [K * dofs_per_element, (K + 1) * dofs_per_element).
class DGSpace {
 public:
  DGSpace(std::shared_ptr<const Mesh1D> mesh, int order);
  DGSpace(std::shared_ptr<const TriMesh2D> mesh, int order);

  int dim() const { return mesh1d_ ? 1 : 2; }
  int order() const { return order_; }
  std::size_t n_elements() const;
  std::size_t dofs_per_element() const { return dofs_per_element_; }
  std::size_t total_dofs() const { return n_elements() * dofs_per_element_; }
  std::size_t first_dof(std::size_t element) const { return element * dofs_per_element_; }

  const std::vector<Facet>& facets() const { return facets_; }
  const Mesh1D& mesh1d() const;
  const TriMesh2D& mesh2d() const;

  /// Element length (1-D) or diameter (2-D).
  double element_size(std::size_t element) const;
  double element_measure(std::size_t element) const;

  /// Basis of `element` evaluated at physical point x. Points outside the
  /// element use the polynomial extension, which is how facet traces are
  /// taken.
  std::vector<double> values(std::size_t element, Point x) const;
  std::vector<Vec2> gradients(std::size_t element, Point x) const;
  /// d^2/dx^2 of the basis (1-D only).
  std::vector<double> second_derivatives(std::size_t element, Point x) const;

  /// Physical quadrature: 24-point Gauss in 1-D, degree-20 rule on triangles.
  QuadratureRule element_quadrature(std::size_t element) const;
  /// A single unit-weight point in 1-D; 12-point Gauss along the edge in 2-D.
  QuadratureRule facet_quadrature(const Facet& facet) const;

  /// Element containing x (1-D). Nodes belong to the element on their right,
  /// except the last node.
  std::size_t locate(double x) const;

 private:
  Point to_reference(std::size_t element, Point x) const;

  std::shared_ptr<const Mesh1D> mesh1d_;
  std::shared_ptr<const TriMesh2D> mesh2d_;
  int order_ = 1;
  std::size_t dofs_per_element_ = 0;
  std::vector<Facet> facets_;
};

/// Coefficient vector over a DGSpace.
class CoarseField {
 public:
  CoarseField(std::shared_ptr<const DGSpace> space, Eigen::VectorXd coefficients);

  const DGSpace& space() const { return *space_; }
  std::shared_ptr<const DGSpace> space_ptr() const { return space_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }

  double value(std::size_t element, Point x) const;
  Vec2 gradient(std::size_t element, Point x) const;
  double second_derivative(std::size_t element, Point x) const;

  /// One-sided traces at a facet point; right traces require an interior
  /// facet.
  double trace_left(const Facet& f, Point x) const { return value(f.left_element, x); }
  double trace_right(const Facet& f, Point x) const;
  Vec2 grad_trace_left(const Facet& f, Point x) const { return gradient(f.left_element, x); }
  Vec2 grad_trace_right(const Facet& f, Point x) const;

 private:
  std::shared_ptr<const DGSpace> space_;
  Eigen::VectorXd coefficients_;
};

}  // namespace vmsdg
