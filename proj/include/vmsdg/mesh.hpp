#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "vmsdg/geometry.hpp"

namespace vmsdg {

enum class FacetKind { Interior, Boundary };

/// A facet (point in 1-D, edge in 2-D). The normal points out of
/// `left_element`; the neighbour sees `-normal`.
struct Facet {
  FacetKind kind = FacetKind::Boundary;
  std::size_t left_element = 0;
  std::optional<std::size_t> right_element;
  Vec2 normal;
  double measure = 1.0;
  Point midpoint;
  /// Endpoints of the edge (both equal to the node in 1-D).
  std::array<Point, 2> vertices;
  /// Penalty length: mean size of the incident elements.
  double local_size = 0.0;

  bool interior() const { return kind == FacetKind::Interior; }
};

/// Interval mesh with elements [x_j, x_{j+1}].
class Mesh1D {
 public:
  explicit Mesh1D(std::vector<double> nodes);

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t n_elements() const { return nodes_.size() - 1; }
  double element_size(std::size_t j) const { return nodes_[j + 1] - nodes_[j]; }
  double left() const { return nodes_.front(); }
  double right() const { return nodes_.back(); }

 private:
  std::vector<double> nodes_;
};

enum class Diagonal { LowerLeftToUpperRight, UpperLeftToLowerRight };

/// Triangulation with counter-clockwise triangles. Facets are built on
/// construction.
class TriMesh2D {
 public:
  TriMesh2D(std::vector<Point> vertices,
            std::vector<std::array<std::size_t, 3>> triangles);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<std::size_t, 3>>& triangles() const { return triangles_; }
  const std::vector<Facet>& facets() const { return facets_; }
  std::size_t n_elements() const { return triangles_.size(); }

  std::array<Point, 3> corners(std::size_t t) const;
  double signed_area(std::size_t t) const;
  /// Longest edge.
  double diameter(std::size_t t) const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<Facet> facets_;
};

Mesh1D uniform_mesh_1d(double x0, double x1, std::size_t n);

TriMesh2D triangulate_unit_square(std::size_t m, Diagonal diagonal);

std::vector<Facet> build_facets(const Mesh1D& mesh);
std::vector<Facet> build_facets(const TriMesh2D& mesh);

}  // namespace vmsdg
