#include "vmsdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vmsdg {

DiagnosticsReport fine_scale_diagnostics(const ExactSolution& exact, const CoarseField& coarse,
                                         const DiagnosticsParams& params) {
  const DGSpace& space = coarse.space();
  if (space.dim() == 2 && (!params.eta_interior || !params.eta_boundary))
    throw std::invalid_argument(
        "fine_scale_diagnostics: 2-D diagnostics need eta for interior and boundary facets");
  if (params.advection && !(params.advection->second > 0.0))
    throw std::invalid_argument("fine_scale_diagnostics: nu must be positive");

  DiagnosticsReport rep;
  const auto& facets = space.facets();

  for (std::size_t i = 0; i < facets.size(); ++i) {
    const Facet& f = facets[i];
    if (!f.interior()) continue;
    const Point x = f.midpoint;
    const Vec2 n = f.normal;
    const double u = exact.value(x);
    const Vec2 gu = exact.gradient(x);
    FacetDiagnostics fd;
    fd.facet = i;
    fd.x = x;
    fd.uprime_left = u - coarse.trace_left(f, x);
    fd.uprime_right = u - coarse.trace_right(f, x);
    const double dn_left = dot(gu - coarse.grad_trace_left(f, x), n);
    const double dn_right = dot(gu - coarse.grad_trace_right(f, x), n);
    fd.avg_uprime = 0.5 * (fd.uprime_left + fd.uprime_right);
    fd.avg_grad_uprime = 0.5 * (dn_left + dn_right);
    fd.jump_ubar = coarse.trace_left(f, x) - coarse.trace_right(f, x);

    const double h = f.local_size;
    std::optional<double> d = params.d;
    if (params.eta_interior) {
      const double eta = *params.eta_interior;
      if (params.advection) {
        const auto [a, nu] = *params.advection;
        const double an = std::abs(a * n.x);
        if (!d) d = h / (an * h / nu + 2.0 * eta);
        fd.model_residual = nu * fd.avg_grad_uprime + (0.5 * an + nu * eta / h) * fd.jump_ubar;
      } else {
        if (!d) d = 0.5 * h / eta;
        fd.model_residual = fd.avg_grad_uprime + eta / h * fd.jump_ubar;
      }
    }
    if (d) {
      // u'+ - d n+ . grad u'+ versus u'- - d n- . grad u'-, with n- = -n+.
      fd.taylor_residual = std::abs((fd.uprime_left - *d * dn_left) - (fd.uprime_right + *d * dn_right));
    }
    rep.facets.push_back(fd);
  }

  const int p = space.order();
  const std::size_t n_moments = space.dim() == 1 ? static_cast<std::size_t>(std::max(p - 1, 1)) : 1;
  double l2 = 0.0;
  for (std::size_t k = 0; k < space.n_elements(); ++k) {
    ElementDiagnostics ed;
    ed.moments.assign(n_moments, 0.0);
    const auto quad = space.element_quadrature(k);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point x = quad.points[q];
      const double u = exact.value(x);
      const double up = u - coarse.value(k, x);
      rep.solution_scale = std::max(rep.solution_scale, std::abs(u));
      l2 += quad.weights[q] * up * up;
      double power = 1.0;
      for (std::size_t m = 0; m < n_moments; ++m) {
        ed.moments[m] += quad.weights[q] * up * power;
        power *= x.x;
      }
    }
    rep.elements.push_back(std::move(ed));
  }
  rep.l2_error = std::sqrt(l2);

  if (space.dim() == 1) {
    const auto& nodes = space.mesh1d().nodes();
    for (std::size_t k = 0; k < space.n_elements(); ++k)
      for (double x : {nodes[k], nodes[k + 1]})
        rep.max_nodal_error =
            std::max(rep.max_nodal_error, std::abs(exact.value({x, 0.0}) - coarse.value(k, {x, 0.0})));
    return rep;
  }

  const auto& mesh = space.mesh2d();
  for (std::size_t k = 0; k < space.n_elements(); ++k)
    for (const Point& c : mesh.corners(k))
      rep.max_nodal_error = std::max(rep.max_nodal_error, std::abs(exact.value(c) - coarse.value(k, c)));

  const double eta_i = *params.eta_interior, eta_b = *params.eta_boundary;
  for (auto& ed : rep.elements) {
    ed.loop_identity = 0.0;
    ed.loop_identity_alt = 0.0;
    ed.avg_uprime_loop = 0.0;
    ed.flux_magnitude = 0.0;
  }
  for (const Facet& f : facets) {
    const auto quad = space.facet_quadrature(f);
    const double h = f.local_size;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q];
      const Point x = quad.points[q];
      const double u = exact.value(x);
      const Vec2 gu = exact.gradient(x);
      if (!f.interior()) {
        ElementDiagnostics& ed = rep.elements[f.left_element];
        const double up = u - coarse.value(f.left_element, x);
        const double dn = dot(gu - coarse.gradient(f.left_element, x), f.normal);
        *ed.loop_identity += w * (dn - eta_b / h * up);
        *ed.loop_identity_alt += w * (dn + eta_b / h * up);
        *ed.flux_magnitude += w * std::abs(dot(gu, f.normal));
        continue;
      }
      const std::size_t kl = f.left_element, kr = *f.right_element;
      const double ul = coarse.value(kl, x), ur = coarse.value(kr, x);
      const Vec2 avg_grad_up = gu - 0.5 * (coarse.gradient(kl, x) + coarse.gradient(kr, x));
      const double avg_up = u - 0.5 * (ul + ur);
      for (const auto& [k, sign] : {std::pair{kl, 1.0}, std::pair{kr, -1.0}}) {
        ElementDiagnostics& ed = rep.elements[k];
        const Vec2 nk = sign * f.normal;
        // [v] . n_K = v_K - v_other; [u'] = -[ubar].
        const double jump_ubar = sign * (ul - ur);
        const double jump_up = -jump_ubar;
        *ed.loop_identity += w * (dot(avg_grad_up, nk) + eta_i / h * jump_ubar);
        *ed.loop_identity_alt += w * (dot(avg_grad_up, nk) + eta_i / h * jump_up);
        *ed.avg_uprime_loop += w * avg_up;
        *ed.flux_magnitude += w * std::abs(dot(gu, nk));
      }
    }
  }
  for (const auto& ed : rep.elements) rep.flux_scale = std::max(rep.flux_scale, *ed.flux_magnitude);
  return rep;
}

LoopSummary summarize_loops(const DiagnosticsReport& report) {
  LoopSummary s;
  if (report.elements.empty()) return s;
  for (const auto& ed : report.elements) {
    if (ed.loop_identity) s.identity_max = std::max(s.identity_max, std::abs(*ed.loop_identity));
    if (ed.loop_identity_alt) s.identity_alt_max = std::max(s.identity_alt_max, std::abs(*ed.loop_identity_alt));
    if (ed.avg_uprime_loop) s.avg_uprime_mean += std::abs(*ed.avg_uprime_loop);
    s.uprime_integral_mean += std::abs(ed.moments.front());
  }
  const double n = static_cast<double>(report.elements.size());
  s.avg_uprime_mean /= n;
  s.uprime_integral_mean /= n;
  return s;
}

}  // namespace vmsdg
