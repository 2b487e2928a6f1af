#include "vmsdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vmsdg {

void legendre(int n, double x, double& value, double& derivative) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    value = 1.0;
    derivative = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  value = p1;
  // (1 - x^2) P_n' = n (P_{n-1} - x P_n); endpoints use the closed form.
  if (std::abs(std::abs(x) - 1.0) < 1e-15)
    derivative = (x > 0 ? 1.0 : ((n % 2) ? 1.0 : -1.0)) * 0.5 * n * (n + 1.0);
  else
    derivative = n * (p0 - x * p1) / (1.0 - x * x);
}

QuadratureRule gauss_rule_1d(int n) {
  if (n < 1 || n > 64)
    throw std::invalid_argument("gauss_rule_1d: point count must be in [1, 64], got " +
                                std::to_string(n));
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exactness = 2 * n - 1;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = {-x, 0.0};
    rule.points[n - 1 - i] = {x, 0.0};
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = {0.0, 0.0};
  return rule;
}

std::vector<double> gauss_lobatto_nodes(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_nodes: need at least 2 nodes");
  const int p = n - 1;
  std::vector<double> nodes(n);
  nodes.front() = -1.0;
  nodes.back() = 1.0;
  // Interior nodes are the roots of P_p'; Newton on q = P_p' using
  // (1 - x^2) P_p'' = 2x P_p' - p(p+1) P_p.
  for (int i = 1; i < p; ++i) {
    double x = -std::cos(std::numbers::pi * i / p);
    for (int it = 0; it < 100; ++it) {
      double v = 0.0, d = 0.0;
      legendre(p, x, v, d);
      const double d2 = (2.0 * x * d - p * (p + 1.0) * v) / (1.0 - x * x);
      const double dx = d / d2;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
  }
  for (int i = 0; i < n / 2; ++i) nodes[n - 1 - i] = -nodes[i];
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

QuadratureRule triangle_rule(int degree) {
  if (degree < 1 || degree > 20)
    throw std::invalid_argument("triangle_rule: degree must be in [1, 20], got " +
                                std::to_string(degree));
  // Duffy map (u, v) -> (xi, eta): the integrand is degree+1 in v after the
  // Jacobian (1 - eta)/4 is included.
  const int n = (degree + 2 + 1) / 2;
  const QuadratureRule g = gauss_rule_1d(n);
  QuadratureRule rule;
  rule.exactness = degree;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    const double eta = 0.5 * (1.0 + g.points[j].x);
    for (int i = 0; i < n; ++i) {
      const double xi = 0.5 * (1.0 + g.points[i].x) * (1.0 - eta);
      rule.points.push_back({xi, eta});
      rule.weights.push_back(g.weights[i] * g.weights[j] * 0.25 * (1.0 - eta));
    }
  }
  return rule;
}

}  // namespace vmsdg
