#include <catch_amalgamated.hpp>

#include <random>

#include "vmsdg/basis.hpp"
#include "vmsdg/quadrature.hpp"

using namespace vmsdg;
using Catch::Matchers::WithinAbs;

TEST_CASE("linear nodal basis") {
  auto mid = nodal_basis_1d(1, 0.0, 0);
  CHECK_THAT(mid[0], WithinAbs(0.5, 1e-15));
  CHECK_THAT(mid[1], WithinAbs(0.5, 1e-15));
  auto left = nodal_basis_1d(1, -1.0, 0);
  CHECK_THAT(left[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(left[1], WithinAbs(0.0, 1e-15));
  for (double xi : {-1.0, -0.3, 0.2, 1.0}) {
    auto d = nodal_basis_1d(1, xi, 1);
    CHECK_THAT(d[0], WithinAbs(-0.5, 1e-15));
    CHECK_THAT(d[1], WithinAbs(0.5, 1e-15));
  }
}

TEST_CASE("nodal basis Kronecker property and partition of unity") {
  for (int p = 1; p <= kMaxOrder; ++p) {
    const auto& nodes = nodal_points_1d(p);
    REQUIRE(nodes.size() == static_cast<std::size_t>(p + 1));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const auto v = nodal_basis_1d(p, nodes[j], 0);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK_THAT(v[i], WithinAbs(i == j ? 1.0 : 0.0, 1e-13));
    }
    for (double xi = -1.0; xi <= 1.0; xi += 0.05) {
      double s = 0.0, ds = 0.0, dds = 0.0;
      for (double v : nodal_basis_1d(p, xi, 0)) s += v;
      for (double v : nodal_basis_1d(p, xi, 1)) ds += v;
      for (double v : nodal_basis_1d(p, xi, 2)) dds += v;
      CHECK_THAT(s, WithinAbs(1.0, 1e-13));
      CHECK_THAT(ds, WithinAbs(0.0, 1e-11));
      CHECK_THAT(dds, WithinAbs(0.0, 1e-9));
    }
  }
}

TEST_CASE("nodal basis derivatives match finite differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-0.99, 0.99);
  const double h = 1e-6;
  for (int p = 1; p <= kMaxOrder; ++p)
    for (int k = 0; k < 20; ++k) {
      const double xi = dist(rng);
      for (int deriv : {0, 1}) {
        const auto plus = nodal_basis_1d(p, xi + h, deriv);
        const auto minus = nodal_basis_1d(p, xi - h, deriv);
        const auto d = nodal_basis_1d(p, xi, deriv + 1);
        for (std::size_t i = 0; i < d.size(); ++i)
          CHECK_THAT((plus[i] - minus[i]) / (2 * h), WithinAbs(d[i], 1e-6 * std::max(1.0, std::abs(d[i]))));
      }
    }
}

TEST_CASE("nodal basis rejects bad arguments") {
  CHECK_THROWS_AS(nodal_basis_1d(0, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(nodal_basis_1d(7, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(nodal_basis_1d(2, 0.0, 3), std::invalid_argument);
}

TEST_CASE("modal triangle basis is orthonormal") {
  for (int p = 1; p <= kMaxOrder; ++p) {
    const QuadratureRule q = triangle_rule(2 * p);
    const std::size_t n = triangle_mode_count(p);
    std::vector<std::vector<double>> vals;
    for (const Point& x : q.points) {
      vals.push_back(modal_basis_triangle(p, x));
      REQUIRE(vals.back().size() == n);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double m = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) m += q.weights[k] * vals[k][i] * vals[k][j];
        CHECK_THAT(m, WithinAbs(i == j ? 1.0 : 0.0, 1e-12));
      }
  }
}

TEST_CASE("modal triangle constant mode and gradients") {
  for (Point x : {Point{0.2, 0.3}, Point{0.0, 0.0}, Point{0.6, 0.1}}) {
    CHECK_THAT(modal_basis_triangle(1, x)[0], WithinAbs(std::sqrt(2.0), 1e-14));
    const auto g = modal_basis_triangle_gradients(3, x);
    CHECK_THAT(g[0].x, WithinAbs(0.0, 1e-15));
    CHECK_THAT(g[0].y, WithinAbs(0.0, 1e-15));
  }
  const double h = 1e-6;
  const Point x{0.25, 0.35};
  const auto g = modal_basis_triangle_gradients(4, x);
  const auto px = modal_basis_triangle(4, {x.x + h, x.y}), mx = modal_basis_triangle(4, {x.x - h, x.y});
  const auto py = modal_basis_triangle(4, {x.x, x.y + h}), my = modal_basis_triangle(4, {x.x, x.y - h});
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK_THAT((px[i] - mx[i]) / (2 * h), WithinAbs(g[i].x, 1e-6 * std::max(1.0, std::abs(g[i].x))));
    CHECK_THAT((py[i] - my[i]) / (2 * h), WithinAbs(g[i].y, 1e-6 * std::max(1.0, std::abs(g[i].y))));
  }
  CHECK_THROWS_AS(modal_basis_triangle(0, x), std::invalid_argument);
  CHECK_THROWS_AS(modal_basis_triangle(7, x), std::invalid_argument);
}
