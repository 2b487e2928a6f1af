#include "vmsdg/weakforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vmsdg/greens.hpp"

namespace vmsdg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Basis traces of the elements adjacent to a facet at one point. Local
// numbering is left-element dofs followed by right-element dofs.
struct FacetBasis {
  std::vector<std::size_t> dofs;
  std::size_t n_left = 0;
  bool interior = false;
  Eigen::VectorXd value;  // own-side basis values
  Eigen::VectorXd dn;     // own-side grad(phi) . n+

  Eigen::VectorXd jump() const {
    Eigen::VectorXd v = value;
    if (interior) v.tail(v.size() - n_left) *= -1.0;
    return v;
  }
  Eigen::VectorXd avg() const { return interior ? Eigen::VectorXd(0.5 * value) : value; }
  Eigen::VectorXd dn_avg() const { return interior ? Eigen::VectorXd(0.5 * dn) : dn; }
  Eigen::VectorXd dn_jump() const {
    Eigen::VectorXd v = dn;
    if (interior) v.tail(v.size() - n_left) *= -1.0;
    return v;
  }
  Eigen::VectorXd left_only(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    out.head(n_left) = v.head(n_left);
    return out;
  }
  Eigen::VectorXd right_only(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    out.tail(v.size() - n_left) = v.tail(v.size() - n_left);
    return out;
  }
};

FacetBasis facet_basis(const DGSpace& space, const Facet& f, Point x) {
  FacetBasis fb;
  fb.interior = f.interior();
  const std::size_t nd = space.dofs_per_element();
  const std::size_t total = fb.interior ? 2 * nd : nd;
  fb.n_left = nd;
  fb.value.resize(static_cast<Eigen::Index>(total));
  fb.dn.resize(static_cast<Eigen::Index>(total));
  auto fill = [&](std::size_t element, std::size_t offset) {
    const auto v = space.values(element, x);
    const auto g = space.gradients(element, x);
    for (std::size_t i = 0; i < nd; ++i) {
      fb.dofs.push_back(space.first_dof(element) + i);
      fb.value[static_cast<Eigen::Index>(offset + i)] = v[i];
      fb.dn[static_cast<Eigen::Index>(offset + i)] = dot(g[i], f.normal);
    }
  };
  fill(f.left_element, 0);
  if (fb.interior) fill(*f.right_element, nd);
  return fb;
}

void add_block(DenseMatrix& a, const FacetBasis& fb, double w, const Eigen::VectorXd& row,
               const Eigen::VectorXd& col) {
  for (std::size_t i = 0; i < fb.dofs.size(); ++i) {
    const double ri = w * row[static_cast<Eigen::Index>(i)];
    if (ri == 0.0) continue;
    for (std::size_t j = 0; j < fb.dofs.size(); ++j)
      a(static_cast<Eigen::Index>(fb.dofs[i]), static_cast<Eigen::Index>(fb.dofs[j])) +=
          ri * col[static_cast<Eigen::Index>(j)];
  }
}

void add_vector(Eigen::VectorXd& b, const FacetBasis& fb, double w, const Eigen::VectorXd& row) {
  for (std::size_t i = 0; i < fb.dofs.size(); ++i)
    b[static_cast<Eigen::Index>(fb.dofs[i])] += w * row[static_cast<Eigen::Index>(i)];
}

LinearSystem empty_system(const DGSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dofs());
  LinearSystem sys;
  sys.matrix = DenseMatrix::Zero(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);
  return sys;
}

// (grad w, coef grad u) + (w, f) over all elements.
void add_stiffness_and_load(const DGSpace& space, double coef, const ScalarFunction& f,
                            LinearSystem& sys) {
  const std::size_t nd = space.dofs_per_element();
  for (std::size_t k = 0; k < space.n_elements(); ++k) {
    const auto quad = space.element_quadrature(k);
    const auto base = static_cast<Eigen::Index>(space.first_dof(k));
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const auto phi = space.values(k, quad.points[q]);
      const auto grad = space.gradients(k, quad.points[q]);
      const double w = quad.weights[q];
      const double fq = f ? f(quad.points[q]) : 0.0;
      for (std::size_t i = 0; i < nd; ++i) {
        sys.rhs[base + static_cast<Eigen::Index>(i)] += w * phi[i] * fq;
        for (std::size_t j = 0; j < nd; ++j)
          sys.matrix(base + static_cast<Eigen::Index>(i), base + static_cast<Eigen::Index>(j)) +=
              w * coef * dot(grad[i], grad[j]);
      }
    }
  }
}

// -(a w', u) over all elements (1-D).
void add_advection_volume(const DGSpace& space, double a, LinearSystem& sys) {
  const std::size_t nd = space.dofs_per_element();
  for (std::size_t k = 0; k < space.n_elements(); ++k) {
    const auto quad = space.element_quadrature(k);
    const auto base = static_cast<Eigen::Index>(space.first_dof(k));
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const auto phi = space.values(k, quad.points[q]);
      const auto grad = space.gradients(k, quad.points[q]);
      for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nd; ++j)
          sys.matrix(base + static_cast<Eigen::Index>(i), base + static_cast<Eigen::Index>(j)) -=
              quad.weights[q] * a * grad[i].x * phi[j];
    }
  }
}

void add_strong_constraints(const DGSpace& space, const StrongDirichlet& bc, LinearSystem& sys) {
  sys.constraints.push_back({0, bc.left});
  sys.constraints.push_back({space.total_dofs() - 1, bc.right});
}

void check_explicit_sizes(const ExplicitModel& m, std::size_t n_interior) {
  if (m.phi.size() != n_interior || m.theta.size() != n_interior ||
      m.uprime_left.size() != n_interior || m.uprime_right.size() != n_interior)
    throw std::invalid_argument("explicit model: expected " + std::to_string(n_interior) +
                                " values per field (one per interior facet)");
  auto finite = [](const std::vector<double>& v) {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  };
  if (!finite(m.phi) || !finite(m.theta) || !finite(m.uprime_left) || !finite(m.uprime_right))
    throw std::invalid_argument("explicit model: values must be finite");
}

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("penalty eta must be positive");
}

// A fine-scale trace expressed as constant + sum coef * u[dof].
struct AffineTrace {
  double constant = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

void add_element_value(const DGSpace& space, std::size_t element, Point x, double scale,
                       AffineTrace& t) {
  const auto phi = space.values(element, x);
  for (std::size_t i = 0; i < phi.size(); ++i) t.terms.push_back({space.first_dof(element) + i, scale * phi[i]});
}

// u'_K at facet f as seen from element K (left or right side).
AffineTrace fine_trace(const DGSpace& space, const Facet& f, std::size_t ordinal, bool from_left,
                       double a, const FineScaleInterfaceModel& model) {
  AffineTrace t;
  if (!f.interior()) return t;
  const std::size_t own = from_left ? f.left_element : *f.right_element;
  const std::size_t other = from_left ? *f.right_element : f.left_element;
  const Point x = f.midpoint;
  auto from_data = [&](const ExplicitModel& m) {
    t.constant = from_left ? m.uprime_left[ordinal] : m.uprime_right[ordinal];
  };
  std::visit(overloaded{
                 [](const NoModel&) {},
                 [&](const ExplicitModel& m) { from_data(m); },
                 [&](const InteriorPenaltyModel&) {
                   add_element_value(space, other, x, 0.5, t);
                   add_element_value(space, own, x, -0.5, t);
                 },
                 [&](const InteriorPenaltyUpwindModel&) {
                   add_element_value(space, other, x, 0.5, t);
                   add_element_value(space, own, x, -0.5, t);
                 },
                 [&](const UpwindModel& m) {
                   if (m.diffusion) {
                     from_data(*m.diffusion);
                     return;
                   }
                   const double an = a * f.normal.x;
                   if (an == 0.0) return;
                   const bool own_upstream = from_left ? an > 0.0 : an < 0.0;
                   if (own_upstream) return;
                   add_element_value(space, other, x, 1.0, t);
                   add_element_value(space, own, x, -1.0, t);
                 },
             },
             model);
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

FacetTraces jump_average_traces(const CoarseField& field, const Facet& facet, Point x) {
  if (!facet.interior()) throw std::invalid_argument("jump_average_traces: boundary facet");
  const double vl = field.trace_left(facet, x), vr = field.trace_right(facet, x);
  const Vec2 gl = field.grad_trace_left(facet, x), gr = field.grad_trace_right(facet, x);
  FacetTraces t;
  t.avg = 0.5 * (vl + vr);
  t.jump = vl - vr;
  t.grad_avg = 0.5 * (gl + gr);
  t.grad_jump = dot(gl - gr, facet.normal);
  return t;
}

FacetTraces jump_average_traces(const CoarseField& field, const Facet& facet) {
  return jump_average_traces(field, facet, facet.midpoint);
}

std::vector<std::size_t> interior_facet_indices(const DGSpace& space) {
  std::vector<std::size_t> out;
  const auto& facets = space.facets();
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (facets[i].interior()) out.push_back(i);
  return out;
}

LinearSystem assemble_poisson_vms(const DGSpace& space, const ProblemSpec& problem,
                                  const FineScaleInterfaceModel& interface_model,
                                  const VolumetricFineScaleModel& volumetric_model) {
  const auto* op = std::get_if<Poisson>(&problem.op);
  if (!op) throw std::invalid_argument("assemble_poisson_vms: problem is not a Poisson problem");
  const auto* strong = std::get_if<StrongDirichlet>(&problem.bc);
  const auto* weak = std::get_if<WeakDirichlet>(&problem.bc);
  if (space.dim() == 1 && !strong)
    throw std::invalid_argument("assemble_poisson_vms: 1-D problems use strong Dirichlet data");
  if (space.dim() == 2 && !weak)
    throw std::invalid_argument("assemble_poisson_vms: 2-D problems use weak Dirichlet data");
  if (std::holds_alternative<UpwindModel>(interface_model) ||
      std::holds_alternative<InteriorPenaltyUpwindModel>(interface_model))
    throw std::invalid_argument("assemble_poisson_vms: upwind models need an advection operator");
  if (std::holds_alternative<ResidualBased>(volumetric_model) && space.order() > 1)
    throw std::invalid_argument(
        "assemble_poisson_vms: the residual-based volumetric model is defined for p = 1 only");
  const auto* expl = std::get_if<ExplicitModel>(&interface_model);
  const auto* ip = std::get_if<InteriorPenaltyModel>(&interface_model);
  const auto interior = interior_facet_indices(space);
  if (expl) {
    if (space.dim() != 1 || space.order() != 1)
      throw std::invalid_argument("assemble_poisson_vms: explicit models require 1-D linear elements");
    check_explicit_sizes(*expl, interior.size());
  }
  if (ip) check_eta(ip->eta);
  if (space.dim() == 2 && !ip)
    throw std::invalid_argument(
        "assemble_poisson_vms: 2-D problems require the interior penalty model");
  if (weak) check_eta(weak->eta_boundary);

  LinearSystem sys = empty_system(space);
  add_stiffness_and_load(space, 1.0, op->forcing, sys);

  std::size_t ordinal = 0;
  for (const Facet& f : space.facets()) {
    const auto quad = space.facet_quadrature(f);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q];
      const Point x = quad.points[q];
      const FacetBasis fb = facet_basis(space, f, x);
      if (f.interior()) {
        // -sum_K <w, grad u . n_K> + <{w}, [grad u]> - <{grad w}, [u]>
        add_block(sys.matrix, fb, -w, fb.left_only(fb.value), fb.left_only(fb.dn));
        add_block(sys.matrix, fb, w, fb.right_only(fb.value), fb.right_only(fb.dn));
        add_block(sys.matrix, fb, w, fb.avg(), fb.dn_jump());
        add_block(sys.matrix, fb, -w, fb.dn_avg(), fb.jump());
        if (expl) {
          add_vector(sys.rhs, fb, w * expl->theta[ordinal], fb.jump());
          add_vector(sys.rhs, fb, -w * expl->phi[ordinal], fb.dn_jump());
        }
        if (ip) add_block(sys.matrix, fb, w * ip->eta / f.local_size, fb.jump(), fb.jump());
      } else {
        add_block(sys.matrix, fb, -w, fb.value, fb.dn);
        if (weak) {
          // grad u' . n = -(eta/h) u' with u' = u_D - u.
          const double pen = weak->eta_boundary / f.local_size;
          const double ud = weak->value ? weak->value(x) : 0.0;
          add_block(sys.matrix, fb, w * pen, fb.value, fb.value);
          add_block(sys.matrix, fb, -w, fb.dn, fb.value);
          add_vector(sys.rhs, fb, w * pen * ud, fb.value);
          add_vector(sys.rhs, fb, -w * ud, fb.dn);
        }
      }
    }
    if (f.interior()) ++ordinal;
  }
  if (strong) add_strong_constraints(space, *strong, sys);
  return sys;
}

LinearSystem assemble_addiff_vms(const DGSpace& space, const ProblemSpec& problem,
                                 const FineScaleInterfaceModel& interface_model,
                                 const VolumetricFineScaleModel& volumetric_model) {
  const auto* op = std::get_if<AdvectionDiffusion>(&problem.op);
  if (!op) throw std::invalid_argument("assemble_addiff_vms: problem is not advection-diffusion");
  if (space.dim() != 1) throw std::invalid_argument("assemble_addiff_vms: 1-D only");
  const auto* strong = std::get_if<StrongDirichlet>(&problem.bc);
  if (!strong) throw std::invalid_argument("assemble_addiff_vms: strong Dirichlet data required");
  if (!(op->nu > 0.0)) throw std::invalid_argument("assemble_addiff_vms: nu must be positive");
  const auto* resid = std::get_if<ResidualBased>(&volumetric_model);
  if (resid && space.order() != 1)
    throw std::invalid_argument(
        "assemble_addiff_vms: the residual-based volumetric model is defined for p = 1 only");

  const auto interior = interior_facet_indices(space);
  const ExplicitModel* expl_diff = nullptr;  // source of diffusive fine-scale data
  bool explicit_advective = false;
  double penalty_ip = 0.0;  // eta for nu (eta/h) [w][u]
  bool upwind = false;
  std::visit(overloaded{
                 [](const NoModel&) {},
                 [&](const ExplicitModel& m) {
                   check_explicit_sizes(m, interior.size());
                   expl_diff = &m;
                   explicit_advective = true;
                 },
                 [&](const InteriorPenaltyModel& m) {
                   check_eta(m.eta);
                   penalty_ip = m.eta;
                 },
                 [&](const UpwindModel& m) {
                   upwind = true;
                   if (m.diffusion) {
                     check_explicit_sizes(*m.diffusion, interior.size());
                     expl_diff = &*m.diffusion;
                   }
                 },
                 [&](const InteriorPenaltyUpwindModel& m) {
                   check_eta(m.eta);
                   penalty_ip = m.eta;
                   upwind = true;
                 },
             },
             interface_model);

  const double a = op->a, nu = op->nu;
  LinearSystem sys = empty_system(space);
  add_stiffness_and_load(space, nu, op->forcing, sys);
  add_advection_volume(space, a, sys);

  std::size_t ordinal = 0;
  for (const Facet& f : space.facets()) {
    const FacetBasis fb = facet_basis(space, f, f.midpoint);
    if (!f.interior()) {
      // Diffusive consistency term; it only touches the constrained end rows.
      add_block(sys.matrix, fb, -nu, fb.value, fb.dn);
      continue;
    }
    const Eigen::VectorXd jump = fb.jump();
    // diffusion: -nu <[w], {u'}> - nu <{w'}, [u]>
    add_block(sys.matrix, fb, -nu, jump, fb.dn_avg());
    add_block(sys.matrix, fb, -nu, fb.dn_avg(), jump);
    // advection: <[w] a, {u}>
    add_block(sys.matrix, fb, a * f.normal.x, jump, fb.avg());
    if (upwind) add_block(sys.matrix, fb, 0.5 * std::abs(a * f.normal.x), jump, jump);
    if (penalty_ip > 0.0) add_block(sys.matrix, fb, nu * penalty_ip / f.local_size, jump, jump);
    if (expl_diff) {
      const double phi = expl_diff->phi[ordinal], theta = expl_diff->theta[ordinal];
      if (explicit_advective) add_vector(sys.rhs, fb, -a * f.normal.x * phi, jump);
      add_vector(sys.rhs, fb, nu * theta, jump);
      add_vector(sys.rhs, fb, -nu * phi, fb.dn_jump());
    }
    ++ordinal;
  }

  if (resid) {
    // (L* w, u')_K with L* w = -a w' constant on linear elements and the
    // element mean of u' given by the Green's function:
    //   mean u' = tau R + nu gamma0 u'(x_j) - nu gamma1 u'(x_{j+1}).
    const auto& facets = space.facets();
    std::vector<std::size_t> facet_ordinal(facets.size(), 0);
    for (std::size_t o = 0; o < interior.size(); ++o) facet_ordinal[interior[o]] = o;
    const std::size_t nd = space.dofs_per_element();
    for (std::size_t k = 0; k < space.n_elements(); ++k) {
      const double h = space.element_size(k);
      const Point mid{0.5 * (space.mesh1d().nodes()[k] + space.mesh1d().nodes()[k + 1]), 0.0};
      const auto grad = space.gradients(k, mid);
      const auto g = green_quantities({a, nu, h});
      const auto base = static_cast<Eigen::Index>(space.first_dof(k));
      const double fmid = op->forcing ? op->forcing(mid) : 0.0;
      for (std::size_t i = 0; i < nd; ++i) {
        const double lw = -a * grad[i].x * h;  // integral of L* phi_i over K
        const auto row = base + static_cast<Eigen::Index>(i);
        if (resid->use_tau) {
          sys.rhs[row] -= lw * g.tau * fmid;
          for (std::size_t j = 0; j < nd; ++j)
            sys.matrix(row, base + static_cast<Eigen::Index>(j)) -= lw * g.tau * a * grad[j].x;
        }
        if (resid->use_gammas) {
          const Facet& fl = facets[k];
          const Facet& fr = facets[k + 1];
          const AffineTrace tl = fine_trace(space, fl, facet_ordinal[k], false, a, interface_model);
          const AffineTrace tr = fine_trace(space, fr, facet_ordinal[k + 1], true, a, interface_model);
          const double cl = nu * g.gamma0, cr = -nu * g.gamma1;
          sys.rhs[row] -= lw * (cl * tl.constant + cr * tr.constant);
          for (const auto& [dof, c] : tl.terms) sys.matrix(row, static_cast<Eigen::Index>(dof)) += lw * cl * c;
          for (const auto& [dof, c] : tr.terms) sys.matrix(row, static_cast<Eigen::Index>(dof)) += lw * cr * c;
        }
      }
    }
  }
  add_strong_constraints(space, *strong, sys);
  return sys;
}

LinearSystem assemble_classical(const DGSpace& space, const ProblemSpec& problem,
                                const ClassicalFormulation& formulation) {
  if (const auto* up = std::get_if<UpwindAdvectionIP>(&formulation)) {
    const auto* op = std::get_if<AdvectionDiffusion>(&problem.op);
    if (!op) throw std::invalid_argument("assemble_classical: UpwindAdvectionIP needs advection-diffusion");
    if (space.dim() != 1) throw std::invalid_argument("assemble_classical: UpwindAdvectionIP is 1-D only");
    const auto* strong = std::get_if<StrongDirichlet>(&problem.bc);
    if (!strong) throw std::invalid_argument("assemble_classical: strong Dirichlet data required");
    check_eta(up->eta);
    LinearSystem sys = empty_system(space);
    add_stiffness_and_load(space, op->nu, op->forcing, sys);
    add_advection_volume(space, op->a, sys);
    for (const Facet& f : space.facets()) {
      if (!f.interior()) continue;
      const FacetBasis fb = facet_basis(space, f, f.midpoint);
      const Eigen::VectorXd jump = fb.jump();
      add_block(sys.matrix, fb, -op->nu, jump, fb.dn_avg());
      add_block(sys.matrix, fb, -op->nu, fb.dn_avg(), jump);
      add_block(sys.matrix, fb, op->nu * up->eta / f.local_size, jump, jump);
    }
    sys.matrix += upwind_facet_block(space, op->a, UpwindForm::TraceSelection);
    add_strong_constraints(space, *strong, sys);
    return sys;
  }

  const auto* op = std::get_if<Poisson>(&problem.op);
  if (!op) throw std::invalid_argument("assemble_classical: formulation requires a Poisson problem");
  const auto* strong = std::get_if<StrongDirichlet>(&problem.bc);
  const auto* weak = std::get_if<WeakDirichlet>(&problem.bc);
  if (space.dim() == 1 && !strong)
    throw std::invalid_argument("assemble_classical: 1-D problems use strong Dirichlet data");
  if (space.dim() == 2 && !weak)
    throw std::invalid_argument("assemble_classical: 2-D problems use weak Dirichlet data");

  bool consistency = true, penalty = true;
  double symmetry = -1.0, eta = 0.0;
  std::visit(overloaded{
                 [&](const InteriorPenalty& m) { eta = m.eta; },
                 [&](const NIPG& m) {
                   eta = m.eta;
                   symmetry = 1.0;
                 },
                 [&](const BaumannOden&) {
                   symmetry = 1.0;
                   penalty = false;
                 },
                 [&](const BabuskaZlamal& m) {
                   eta = m.eta;
                   consistency = false;
                   symmetry = 0.0;
                 },
                 [](const UpwindAdvectionIP&) {},
             },
             formulation);
  if (penalty) check_eta(eta);
  if (weak && penalty) check_eta(weak->eta_boundary);

  LinearSystem sys = empty_system(space);
  add_stiffness_and_load(space, 1.0, op->forcing, sys);
  for (const Facet& f : space.facets()) {
    const auto quad = space.facet_quadrature(f);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q];
      const Point x = quad.points[q];
      const FacetBasis fb = facet_basis(space, f, x);
      if (!f.interior() && strong) {
        // -<w, grad u . n> on the domain boundary; the data enter strongly.
        if (consistency) add_block(sys.matrix, fb, -w, fb.value, fb.dn);
        continue;
      }
      // On the boundary jump and average reduce to the one-sided trace.
      const Eigen::VectorXd jump = fb.jump();
      const Eigen::VectorXd dn_avg = fb.dn_avg();
      if (consistency) add_block(sys.matrix, fb, -w, jump, dn_avg);
      if (symmetry != 0.0) add_block(sys.matrix, fb, symmetry * w, dn_avg, jump);
      const double eta_f = f.interior() ? eta : (weak ? weak->eta_boundary : 0.0);
      if (penalty) add_block(sys.matrix, fb, w * eta_f / f.local_size, jump, jump);
      if (!f.interior()) {
        const double ud = weak->value ? weak->value(x) : 0.0;
        if (symmetry != 0.0) add_vector(sys.rhs, fb, symmetry * w * ud, dn_avg);
        if (penalty) add_vector(sys.rhs, fb, w * eta_f / f.local_size * ud, jump);
      }
    }
  }
  if (strong) add_strong_constraints(space, *strong, sys);
  return sys;
}

DenseMatrix interior_flux_block(const DGSpace& space, FluxPath path) {
  const auto n = static_cast<Eigen::Index>(space.total_dofs());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (const Facet& f : space.facets()) {
    if (!f.interior()) continue;
    const auto quad = space.facet_quadrature(f);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q];
      const FacetBasis fb = facet_basis(space, f, quad.points[q]);
      if (path == FluxPath::ElementwiseCollected) {
        add_block(m, fb, w, fb.avg(), fb.dn_jump());
        add_block(m, fb, -w, fb.left_only(fb.value), fb.left_only(fb.dn));
        add_block(m, fb, w, fb.right_only(fb.value), fb.right_only(fb.dn));
      } else {
        add_block(m, fb, -w, fb.jump(), fb.dn_avg());
      }
    }
  }
  return m;
}

DenseMatrix upwind_facet_block(const DGSpace& space, double a, UpwindForm form) {
  if (space.dim() != 1) throw std::invalid_argument("upwind_facet_block: 1-D only");
  const auto n = static_cast<Eigen::Index>(space.total_dofs());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (const Facet& f : space.facets()) {
    if (!f.interior()) continue;
    const FacetBasis fb = facet_basis(space, f, f.midpoint);
    const double an = a * f.normal.x;
    if (form == UpwindForm::Penalty) {
      add_block(m, fb, an, fb.jump(), fb.avg());
      add_block(m, fb, 0.5 * std::abs(an), fb.jump(), fb.jump());
    } else {
      const Eigen::VectorXd up = an >= 0.0 ? fb.left_only(fb.value) : fb.right_only(fb.value);
      add_block(m, fb, an, fb.jump(), up);
    }
  }
  return m;
}

}  // namespace vmsdg
