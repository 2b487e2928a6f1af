#include "vmsdg/space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vmsdg/basis.hpp"

namespace vmsdg {

namespace {

constexpr int kElementGauss1D = 24;
constexpr int kElementDegree2D = 20;
constexpr int kFacetGauss2D = 12;

void check_order(int p) {
  if (p < 1 || p > kMaxOrder)
    throw std::invalid_argument("DGSpace: order must be in [1, 6], got " + std::to_string(p));
}

}  // namespace

DGSpace::DGSpace(std::shared_ptr<const Mesh1D> mesh, int order)
    : mesh1d_(std::move(mesh)), order_(order) {
  if (!mesh1d_) throw std::invalid_argument("DGSpace: null mesh");
  check_order(order);
  dofs_per_element_ = static_cast<std::size_t>(order + 1);
  facets_ = build_facets(*mesh1d_);
}

DGSpace::DGSpace(std::shared_ptr<const TriMesh2D> mesh, int order)
    : mesh2d_(std::move(mesh)), order_(order) {
  if (!mesh2d_) throw std::invalid_argument("DGSpace: null mesh");
  check_order(order);
  dofs_per_element_ = triangle_mode_count(order);
  facets_ = mesh2d_->facets();
}

std::size_t DGSpace::n_elements() const {
  return mesh1d_ ? mesh1d_->n_elements() : mesh2d_->n_elements();
}

const Mesh1D& DGSpace::mesh1d() const {
  if (!mesh1d_) throw std::logic_error("DGSpace: not a 1-D space");
  return *mesh1d_;
}

const TriMesh2D& DGSpace::mesh2d() const {
  if (!mesh2d_) throw std::logic_error("DGSpace: not a 2-D space");
  return *mesh2d_;
}

double DGSpace::element_size(std::size_t element) const {
  return mesh1d_ ? mesh1d_->element_size(element) : mesh2d_->diameter(element);
}

double DGSpace::element_measure(std::size_t element) const {
  return mesh1d_ ? mesh1d_->element_size(element) : mesh2d_->signed_area(element);
}

Point DGSpace::to_reference(std::size_t element, Point x) const {
  if (mesh1d_) {
    const double x0 = mesh1d_->nodes()[element];
    return {2.0 * (x.x - x0) / mesh1d_->element_size(element) - 1.0, 0.0};
  }
  const auto c = mesh2d_->corners(element);
  const Vec2 e1 = c[1] - c[0], e2 = c[2] - c[0], d = x - c[0];
  const double det = e1.x * e2.y - e1.y * e2.x;
  return {(d.x * e2.y - d.y * e2.x) / det, (e1.x * d.y - e1.y * d.x) / det};
}

std::vector<double> DGSpace::values(std::size_t element, Point x) const {
  const Point r = to_reference(element, x);
  return mesh1d_ ? nodal_basis_1d(order_, r.x, 0) : modal_basis_triangle(order_, r);
}

std::vector<Vec2> DGSpace::gradients(std::size_t element, Point x) const {
  const Point r = to_reference(element, x);
  std::vector<Vec2> out(dofs_per_element_);
  if (mesh1d_) {
    const double scale = 2.0 / mesh1d_->element_size(element);
    const auto d = nodal_basis_1d(order_, r.x, 1);
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = {scale * d[i], 0.0};
    return out;
  }
  // grad_x = J^{-T} grad_xi with J = [e1 e2].
  const auto c = mesh2d_->corners(element);
  const Vec2 e1 = c[1] - c[0], e2 = c[2] - c[0];
  const double det = e1.x * e2.y - e1.y * e2.x;
  const auto g = modal_basis_triangle_gradients(order_, r);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = {(e2.y * g[i].x - e1.y * g[i].y) / det, (-e2.x * g[i].x + e1.x * g[i].y) / det};
  }
  return out;
}

std::vector<double> DGSpace::second_derivatives(std::size_t element, Point x) const {
  if (!mesh1d_) throw std::logic_error("DGSpace: second derivatives are 1-D only");
  const Point r = to_reference(element, x);
  const double h = mesh1d_->element_size(element);
  auto d = nodal_basis_1d(order_, r.x, 2);
  for (auto& v : d) v *= 4.0 / (h * h);
  return d;
}

QuadratureRule DGSpace::element_quadrature(std::size_t element) const {
  QuadratureRule out;
  if (mesh1d_) {
    const QuadratureRule g = gauss_rule_1d(kElementGauss1D);
    const double x0 = mesh1d_->nodes()[element];
    const double h = mesh1d_->element_size(element);
    out.exactness = g.exactness;
    for (std::size_t q = 0; q < g.size(); ++q) {
      out.points.push_back({x0 + 0.5 * h * (1.0 + g.points[q].x), 0.0});
      out.weights.push_back(0.5 * h * g.weights[q]);
    }
    return out;
  }
  const QuadratureRule t = triangle_rule(kElementDegree2D);
  const auto c = mesh2d_->corners(element);
  const Vec2 e1 = c[1] - c[0], e2 = c[2] - c[0];
  const double jac = 2.0 * mesh2d_->signed_area(element);
  out.exactness = t.exactness;
  for (std::size_t q = 0; q < t.size(); ++q) {
    out.points.push_back(c[0] + t.points[q].x * e1 + t.points[q].y * e2);
    out.weights.push_back(jac * t.weights[q]);
  }
  return out;
}

QuadratureRule DGSpace::facet_quadrature(const Facet& facet) const {
  QuadratureRule out;
  if (mesh1d_) {
    out.points = {facet.midpoint};
    out.weights = {1.0};
    out.exactness = 100;
    return out;
  }
  const QuadratureRule g = gauss_rule_1d(kFacetGauss2D);
  const Vec2 d = facet.vertices[1] - facet.vertices[0];
  out.exactness = g.exactness;
  for (std::size_t q = 0; q < g.size(); ++q) {
    out.points.push_back(facet.vertices[0] + (0.5 * (1.0 + g.points[q].x)) * d);
    out.weights.push_back(0.5 * facet.measure * g.weights[q]);
  }
  return out;
}

std::size_t DGSpace::locate(double x) const {
  const auto& nodes = mesh1d().nodes();
  if (x < nodes.front() || x > nodes.back())
    throw std::invalid_argument("DGSpace::locate: point outside the mesh");
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  const auto j = static_cast<std::size_t>(it - nodes.begin());
  return std::min(j == 0 ? 0 : j - 1, n_elements() - 1);
}

CoarseField::CoarseField(std::shared_ptr<const DGSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (!space_) throw std::invalid_argument("CoarseField: null space");
  if (static_cast<std::size_t>(coefficients_.size()) != space_->total_dofs())
    throw std::invalid_argument("CoarseField: coefficient count does not match the space");
}

double CoarseField::value(std::size_t element, Point x) const {
  const auto phi = space_->values(element, x);
  const std::size_t base = space_->first_dof(element);
  double v = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) v += coefficients_[base + i] * phi[i];
  return v;
}

Vec2 CoarseField::gradient(std::size_t element, Point x) const {
  const auto g = space_->gradients(element, x);
  const std::size_t base = space_->first_dof(element);
  Vec2 v;
  for (std::size_t i = 0; i < g.size(); ++i) v = v + coefficients_[base + i] * g[i];
  return v;
}

double CoarseField::second_derivative(std::size_t element, Point x) const {
  const auto d = space_->second_derivatives(element, x);
  const std::size_t base = space_->first_dof(element);
  double v = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) v += coefficients_[base + i] * d[i];
  return v;
}

double CoarseField::trace_right(const Facet& f, Point x) const {
  if (!f.right_element) throw std::invalid_argument("CoarseField: boundary facet has no right trace");
  return value(*f.right_element, x);
}

Vec2 CoarseField::grad_trace_right(const Facet& f, Point x) const {
  if (!f.right_element) throw std::invalid_argument("CoarseField: boundary facet has no right trace");
  return gradient(*f.right_element, x);
}

}  // namespace vmsdg
