#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>

#include "vmsdg/projections.hpp"

using namespace vmsdg;
using Catch::Matchers::WithinAbs;

namespace {

std::shared_ptr<const DGSpace> space_1d(std::vector<double> nodes, int p) {
  return std::make_shared<const DGSpace>(std::make_shared<const Mesh1D>(std::move(nodes)), p);
}

std::shared_ptr<const DGSpace> uniform(double x0, double x1, std::size_t n, int p) {
  return std::make_shared<const DGSpace>(std::make_shared<const Mesh1D>(uniform_mesh_1d(x0, x1, n)), p);
}

ExactSolution polynomial(std::vector<double> c) {
  return {[c](Point x) {
            double s = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) s = s * x.x + c[k];
            return s;
          },
          [c](Point x) {
            double s = 0.0;
            for (std::size_t k = c.size(); k-- > 1;) s = s * x.x + static_cast<double>(k) * c[k];
            return Vec2{s, 0.0};
          }};
}

const ExactSolution kSquare = polynomial({0.0, 0.0, 1.0});

double l2_distance_sq(const CoarseField& v, const ExactSolution& u) {
  double s = 0.0;
  const DGSpace& space = v.space();
  for (std::size_t k = 0; k < space.n_elements(); ++k) {
    const QuadratureRule q = space.element_quadrature(k);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double d = v.value(k, q.points[i]) - u.value(q.points[i]);
      s += q.weights[i] * d * d;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("H1 interpolant") {
  auto space = space_1d({0.0, 1.0, 2.0}, 1);
  const CoarseField v = h1_interpolant(kSquare, space);
  CHECK_THAT(v.coefficients()[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(v.coefficients()[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(v.coefficients()[2], WithinAbs(1.0, 1e-15));
  CHECK_THAT(v.coefficients()[3], WithinAbs(4.0, 1e-15));

  auto fine = uniform(0.0, 3.0, 7, 1);
  const ExactSolution line = polynomial({0.5, -2.0});
  const CoarseField l = h1_interpolant(line, fine);
  for (std::size_t k = 0; k < 7; ++k)
    CHECK_THAT(l.value(k, {3.0 * (k + 0.4) / 7.0, 0.0}), WithinAbs(line.value({3.0 * (k + 0.4) / 7.0, 0.0}), 1e-14));

  const CoarseField sq = h1_interpolant(kSquare, fine);
  for (const Facet& f : fine->facets())
    if (f.interior()) CHECK_THAT(sq.trace_left(f, f.midpoint) - sq.trace_right(f, f.midpoint), WithinAbs(0.0, 1e-15));

  CHECK_THROWS_AS(h1_interpolant(kSquare, uniform(0.0, 1.0, 2, 2)), std::invalid_argument);
}

TEST_CASE("L2 projection reproduces members of the space") {
  for (int p = 1; p <= 4; ++p) {
    auto space = uniform(-1.0, 2.0, 5, p);
    std::vector<double> c(static_cast<std::size_t>(p + 1));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = 0.3 * static_cast<double>(k) - 0.7;
    const ExactSolution u = polynomial(c);
    CHECK(l2_distance_sq(l2_projection(u, space), u) <= 1e-24);
  }
}

TEST_CASE("constrained L2 projection of x^2 on one element is the interpolant") {
  const CoarseField v = l2_projection(kSquare, uniform(0.0, 1.0, 1, 1));
  CHECK_THAT(v.coefficients()[0], WithinAbs(0.0, 1e-14));
  CHECK_THAT(v.coefficients()[1], WithinAbs(1.0, 1e-14));
}

TEST_CASE("interior element carries the unconstrained best linear fit") {
  // Best linear fit to x^2 on [a, b]: slope a + b (twice the midpoint),
  // value at the midpoint m^2 + h^2/12.
  auto space = uniform(0.0, 3.0, 3, 1);
  const CoarseField v = l2_projection(kSquare, space);
  const double a = 1.0, b = 2.0, m = 1.5, h = 1.0;
  const double mid = m * m + h * h / 12.0;
  CHECK_THAT(v.value(1, {a, 0.0}), WithinAbs(mid - (a + b) * 0.5 * h, 1e-13));
  CHECK_THAT(v.value(1, {b, 0.0}), WithinAbs(mid + (a + b) * 0.5 * h, 1e-13));
  CHECK_THAT(v.value(0, {0.0, 0.0}), WithinAbs(0.0, 1e-14));
  CHECK_THAT(v.value(2, {3.0, 0.0}), WithinAbs(9.0, 1e-13));
}

TEST_CASE("L2 projection is stationary in the unconstrained coefficients") {
  const ExactSolution u{[](Point x) { return std::sin(3.0 * x.x) + x.x; },
                        [](Point x) { return Vec2{3.0 * std::cos(3.0 * x.x) + 1.0, 0.0}; }};
  auto space = uniform(0.0, 1.5, 4, 2);
  const CoarseField v = l2_projection(u, space);
  const double base = l2_distance_sq(v, u);
  std::mt19937 rng(1);
  std::uniform_int_distribution<Eigen::Index> pick(1, static_cast<Eigen::Index>(space->total_dofs()) - 2);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index k = pick(rng);
    for (double eps : {1e-4, -1e-4}) {
      Eigen::VectorXd c = v.coefficients();
      c[k] += eps;
      CHECK(l2_distance_sq(CoarseField(space, c), u) > base);
    }
  }
}

TEST_CASE("explicit models") {
  auto space = uniform(0.0, 1.0, 3, 1);
  const ExactSolution parabola = polynomial({0.0, 1.0, -1.0});
  const ExplicitModel diff = explicit_model_from(parabola, *space, DifferenceRule{});
  REQUIRE(diff.theta.size() == 2);
  for (double t : diff.theta) CHECK_THAT(t, WithinAbs(0.0, 1e-13));

  const ExactSolution cubic = polynomial({0.0, 0.0, 0.0, 1.0});
  const ExplicitModel from_h1 = explicit_model_from(cubic, *space, h1_interpolant(cubic, space));
  for (double phi : from_h1.phi) CHECK_THAT(phi, WithinAbs(0.0, 1e-14));

  const ExactSolution line = polynomial({0.2, 0.9});
  const ExplicitModel self = explicit_model_from(line, *space, l2_projection(line, space));
  for (const auto* v : {&self.phi, &self.theta, &self.uprime_left, &self.uprime_right})
    for (double x : *v) CHECK_THAT(x, WithinAbs(0.0, 1e-13));

  CHECK_THROWS_AS(explicit_model_from(parabola, *space_1d({0.0, 0.3, 1.0}, 1), DifferenceRule{}),
                  std::invalid_argument);
}

TEST_CASE("gradient self check") {
  const ExactSolution good{[](Point x) { return std::exp(x.x); }, [](Point x) { return Vec2{std::exp(x.x), 0.0}; }};
  const ExactSolution bad{[](Point x) { return std::exp(x.x); }, [](Point) { return Vec2{1.0, 0.0}; }};
  const std::vector<Point> pts{{0.1, 0.0}, {0.5, 0.0}, {0.9, 0.0}};
  CHECK(gradient_self_check(good, pts) <= 1e-6);
  CHECK(gradient_self_check(bad, pts) > 0.1);
}
