#include "vmsdg/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vmsdg {

double gradient_self_check(const ExactSolution& exact, const std::vector<Point>& points,
                           double step) {
  double worst = 0.0;
  for (const Point& p : points) {
    const Vec2 g = exact.gradient(p);
    const double gx = (exact.value({p.x + step, p.y}) - exact.value({p.x - step, p.y})) / (2 * step);
    const double gy = (exact.value({p.x, p.y + step}) - exact.value({p.x, p.y - step})) / (2 * step);
    worst = std::max({worst, std::abs(g.x - gx), std::abs(g.y - gy)});
  }
  return worst;
}

CoarseField h1_interpolant(const ExactSolution& exact, std::shared_ptr<const DGSpace> space) {
  if (!space || space->dim() != 1 || space->order() != 1)
    throw std::invalid_argument("h1_interpolant: requires a 1-D space with p = 1");
  const auto& nodes = space->mesh1d().nodes();
  Eigen::VectorXd c(static_cast<Eigen::Index>(space->total_dofs()));
  for (std::size_t k = 0; k < space->n_elements(); ++k) {
    const auto base = static_cast<Eigen::Index>(space->first_dof(k));
    c[base] = exact.value({nodes[k], 0.0});
    c[base + 1] = exact.value({nodes[k + 1], 0.0});
  }
  return CoarseField(std::move(space), std::move(c));
}

CoarseField l2_projection(const ExactSolution& exact, std::shared_ptr<const DGSpace> space) {
  if (!space || space->dim() != 1) throw std::invalid_argument("l2_projection: requires a 1-D space");
  const std::size_t nd = space->dofs_per_element();
  const std::size_t ne = space->n_elements();
  const auto& nodes = space->mesh1d().nodes();
  Eigen::VectorXd c(static_cast<Eigen::Index>(space->total_dofs()));
  for (std::size_t k = 0; k < ne; ++k) {
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nd), static_cast<Eigen::Index>(nd));
    Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nd));
    const auto quad = space->element_quadrature(k);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const auto phi = space->values(k, quad.points[q]);
      const double u = exact.value(quad.points[q]);
      for (std::size_t i = 0; i < nd; ++i) {
        load[static_cast<Eigen::Index>(i)] += quad.weights[q] * phi[i] * u;
        for (std::size_t j = 0; j < nd; ++j)
          mass(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += quad.weights[q] * phi[i] * phi[j];
      }
    }
    // Endpoint dofs of GLL bases are point values.
    std::vector<std::pair<std::size_t, double>> fixed;
    if (k == 0) fixed.push_back({0, exact.value({nodes.front(), 0.0})});
    if (k == ne - 1) fixed.push_back({nd - 1, exact.value({nodes.back(), 0.0})});
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < nd; ++i)
      if (std::none_of(fixed.begin(), fixed.end(), [i](const auto& f) { return f.first == i; }))
        free.push_back(i);
    Eigen::VectorXd local = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nd));
    for (const auto& [i, v] : fixed) local[static_cast<Eigen::Index>(i)] = v;
    if (!free.empty()) {
      const auto nf = static_cast<Eigen::Index>(free.size());
      Eigen::MatrixXd mff(nf, nf);
      Eigen::VectorXd rf(nf);
      for (Eigen::Index a = 0; a < nf; ++a) {
        const auto ia = static_cast<Eigen::Index>(free[a]);
        rf[a] = load[ia];
        for (const auto& [j, v] : fixed) rf[a] -= mass(ia, static_cast<Eigen::Index>(j)) * v;
        for (Eigen::Index b = 0; b < nf; ++b) mff(a, b) = mass(ia, static_cast<Eigen::Index>(free[b]));
      }
      const Eigen::VectorXd sol = mff.ldlt().solve(rf);
      for (Eigen::Index a = 0; a < nf; ++a) local[static_cast<Eigen::Index>(free[a])] = sol[a];
    }
    c.segment(static_cast<Eigen::Index>(space->first_dof(k)), static_cast<Eigen::Index>(nd)) = local;
  }
  return CoarseField(std::move(space), std::move(c));
}

ExplicitModel explicit_model_from(const ExactSolution& exact, const DGSpace& space,
                                  const ModelReference& reference) {
  if (space.dim() != 1) throw std::invalid_argument("explicit_model_from: 1-D only");
  const auto interior = interior_facet_indices(space);
  ExplicitModel m;
  m.phi.reserve(interior.size());
  if (std::holds_alternative<DifferenceRule>(reference)) {
    const auto& mesh = space.mesh1d();
    const double h = mesh.element_size(0);
    for (std::size_t k = 1; k < mesh.n_elements(); ++k)
      if (std::abs(mesh.element_size(k) - h) > 1e-12 * h)
        throw std::invalid_argument("explicit_model_from: the difference rule needs a uniform mesh");
    for (std::size_t idx : interior) {
      const double x = space.facets()[idx].midpoint.x;
      const double du = exact.gradient({x, 0.0}).x;
      const double diff = (exact.value({x + h, 0.0}) - exact.value({x - h, 0.0})) / (2.0 * h);
      m.phi.push_back(0.0);
      m.theta.push_back(du - diff);
      m.uprime_left.push_back(0.0);
      m.uprime_right.push_back(0.0);
    }
    return m;
  }
  const CoarseField& ref = std::get<CoarseField>(reference);
  if (&ref.space() != &space && ref.space().total_dofs() != space.total_dofs())
    throw std::invalid_argument("explicit_model_from: reference field lives on a different space");
  for (std::size_t idx : interior) {
    const Facet& f = space.facets()[idx];
    const Point x = f.midpoint;
    const FacetTraces t = jump_average_traces(ref, f, x);
    const double u = exact.value(x);
    m.phi.push_back(u - t.avg);
    m.theta.push_back(exact.gradient(x).x - t.grad_avg.x);
    m.uprime_left.push_back(u - ref.trace_left(f, x));
    m.uprime_right.push_back(u - ref.trace_right(f, x));
  }
  return m;
}

}  // namespace vmsdg
