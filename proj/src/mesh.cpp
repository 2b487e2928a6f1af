#include "vmsdg/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace vmsdg {

Mesh1D::Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("Mesh1D: need at least two nodes");
  for (std::size_t j = 0; j + 1 < nodes_.size(); ++j) {
    if (!(nodes_[j + 1] > nodes_[j]))
      throw std::invalid_argument("Mesh1D: nodes must be strictly increasing (node " +
                                  std::to_string(j + 1) + ")");
  }
}

Mesh1D uniform_mesh_1d(double x0, double x1, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_mesh_1d: n must be positive");
  if (!(x1 > x0)) throw std::invalid_argument("uniform_mesh_1d: require x1 > x0");
  std::vector<double> nodes(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    nodes[j] = x0 + static_cast<double>(j) * (x1 - x0) / static_cast<double>(n);
  nodes.back() = x1;
  return Mesh1D(std::move(nodes));
}

std::vector<Facet> build_facets(const Mesh1D& mesh) {
  const auto& x = mesh.nodes();
  const std::size_t n = mesh.n_elements();
  std::vector<Facet> facets;
  facets.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    Facet f;
    f.midpoint = {x[j], 0.0};
    f.vertices = {f.midpoint, f.midpoint};
    f.measure = 1.0;
    if (j == 0) {
      f.kind = FacetKind::Boundary;
      f.left_element = 0;
      f.normal = {-1.0, 0.0};
      f.local_size = mesh.element_size(0);
    } else if (j == n) {
      f.kind = FacetKind::Boundary;
      f.left_element = n - 1;
      f.normal = {1.0, 0.0};
      f.local_size = mesh.element_size(n - 1);
    } else {
      f.kind = FacetKind::Interior;
      f.left_element = j - 1;
      f.right_element = j;
      f.normal = {1.0, 0.0};
      f.local_size = 0.5 * (mesh.element_size(j - 1) + mesh.element_size(j));
    }
    facets.push_back(f);
  }
  return facets;
}

TriMesh2D::TriMesh2D(std::vector<Point> vertices,
                     std::vector<std::array<std::size_t, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw std::invalid_argument("TriMesh2D: no triangles");
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (auto v : triangles_[t])
      if (v >= vertices_.size())
        throw std::invalid_argument("TriMesh2D: vertex index out of range in triangle " +
                                    std::to_string(t));
    if (!(signed_area(t) > 0.0))
      throw std::invalid_argument("TriMesh2D: triangle " + std::to_string(t) +
                                  " is not counter-clockwise");
  }
  facets_ = build_facets(*this);
}

std::array<Point, 3> TriMesh2D::corners(std::size_t t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double TriMesh2D::signed_area(std::size_t t) const {
  const auto c = corners(t);
  const Vec2 e1 = c[1] - c[0];
  const Vec2 e2 = c[2] - c[0];
  return 0.5 * (e1.x * e2.y - e1.y * e2.x);
}

double TriMesh2D::diameter(std::size_t t) const {
  const auto c = corners(t);
  return std::max({norm(c[1] - c[0]), norm(c[2] - c[1]), norm(c[0] - c[2])});
}

std::vector<Facet> build_facets(const TriMesh2D& mesh) {
  // Edge k of a triangle runs from corner k to corner k+1.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<Facet> facets;
  const auto& tris = mesh.triangles();
  const auto& verts = mesh.vertices();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tris[t][k];
      const std::size_t b = tris[t][(k + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        Facet f;
        f.kind = FacetKind::Boundary;
        f.left_element = t;
        const Vec2 d = verts[b] - verts[a];
        f.measure = norm(d);
        f.normal = (1.0 / f.measure) * Vec2{d.y, -d.x};
        f.vertices = {verts[a], verts[b]};
        f.midpoint = 0.5 * (verts[a] + verts[b]);
        f.local_size = mesh.diameter(t);
        index.emplace(key, facets.size());
        facets.push_back(f);
      } else {
        Facet& f = facets[it->second];
        if (f.right_element)
          throw std::invalid_argument("TriMesh2D: edge shared by more than two triangles");
        f.kind = FacetKind::Interior;
        f.right_element = t;
        f.local_size = 0.5 * (f.local_size + mesh.diameter(t));
      }
    }
  }
  return facets;
}

TriMesh2D triangulate_unit_square(std::size_t m, Diagonal diagonal) {
  if (m == 0) throw std::invalid_argument("triangulate_unit_square: m must be positive");
  std::vector<Point> vertices;
  vertices.reserve((m + 1) * (m + 1));
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t i = 0; i <= m; ++i)
      vertices.push_back({static_cast<double>(i) / static_cast<double>(m),
                          static_cast<double>(j) / static_cast<double>(m)});
  auto id = [m](std::size_t i, std::size_t j) { return j * (m + 1) + i; };
  std::vector<std::array<std::size_t, 3>> triangles;
  triangles.reserve(2 * m * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
      if (diagonal == Diagonal::LowerLeftToUpperRight) {
        triangles.push_back({v00, v10, v11});
        triangles.push_back({v00, v11, v01});
      } else {
        triangles.push_back({v00, v10, v01});
        triangles.push_back({v10, v11, v01});
      }
    }
  }
  return TriMesh2D(std::move(vertices), std::move(triangles));
}

}  // namespace vmsdg
