#include "vmsdg/basis.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vmsdg/quadrature.hpp"

namespace vmsdg {

namespace {

void check_order(int p, const char* who) {
  if (p < 1 || p > kMaxOrder)
    throw std::invalid_argument(std::string(who) + ": order must be in [1, 6], got " +
                                std::to_string(p));
}

}  // namespace

const std::vector<double>& nodal_points_1d(int p) {
  check_order(p, "nodal_points_1d");
  static const std::array<std::vector<double>, kMaxOrder + 1> table = [] {
    std::array<std::vector<double>, kMaxOrder + 1> t;
    for (int q = 1; q <= kMaxOrder; ++q) t[q] = gauss_lobatto_nodes(q + 1);
    return t;
  }();
  return table[p];
}

std::vector<double> nodal_basis_1d(int p, double xi, int deriv) {
  check_order(p, "nodal_basis_1d");
  if (deriv < 0 || deriv > 2)
    throw std::invalid_argument("nodal_basis_1d: deriv must be 0, 1 or 2");
  const auto& z = nodal_points_1d(p);
  const int n = p + 1;
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double denom = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != i) denom *= z[i] - z[m];
    double acc = 0.0;
    if (deriv == 0) {
      acc = 1.0;
      for (int m = 0; m < n; ++m)
        if (m != i) acc *= xi - z[m];
    } else if (deriv == 1) {
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        double term = 1.0;
        for (int m = 0; m < n; ++m)
          if (m != i && m != k) term *= xi - z[m];
        acc += term;
      }
    } else {
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        for (int l = 0; l < n; ++l) {
          if (l == i || l == k) continue;
          double term = 1.0;
          for (int m = 0; m < n; ++m)
            if (m != i && m != k && m != l) term *= xi - z[m];
          acc += term;
        }
      }
    }
    out[i] = acc / denom;
  }
  return out;
}

double jacobi_p(int n, double alpha, double beta, double x) {
  const double ab = alpha + beta;
  const double gamma0 = std::pow(2.0, ab + 1.0) / (ab + 1.0) * std::tgamma(alpha + 1.0) *
                        std::tgamma(beta + 1.0) / std::tgamma(ab + 1.0);
  double prev = 1.0 / std::sqrt(gamma0);
  if (n == 0) return prev;
  const double gamma1 = (alpha + 1.0) * (beta + 1.0) / (ab + 3.0) * gamma0;
  double cur = ((ab + 2.0) * x / 2.0 + (alpha - beta) / 2.0) / std::sqrt(gamma1);
  double a_old = 2.0 / (2.0 + ab) * std::sqrt((alpha + 1.0) * (beta + 1.0) / (ab + 3.0));
  for (int i = 1; i < n; ++i) {
    const double h1 = 2.0 * i + ab;
    const double a_new = 2.0 / (h1 + 2.0) *
                         std::sqrt((i + 1.0) * (i + 1.0 + ab) * (i + 1.0 + alpha) *
                                   (i + 1.0 + beta) / (h1 + 1.0) / (h1 + 3.0));
    const double b_new = -(alpha * alpha - beta * beta) / h1 / (h1 + 2.0);
    const double next = (-a_old * prev + (x - b_new) * cur) / a_new;
    prev = cur;
    cur = next;
    a_old = a_new;
  }
  return cur;
}

namespace {

double grad_jacobi_p(int n, double alpha, double beta, double x) {
  if (n == 0) return 0.0;
  return std::sqrt(n * (n + alpha + beta + 1.0)) * jacobi_p(n - 1, alpha + 1.0, beta + 1.0, x);
}

// Collapsed coordinates of the biunit triangle point (r, s).
void collapse(double r, double s, double& a, double& b) {
  a = (std::abs(s - 1.0) > 1e-14) ? 2.0 * (1.0 + r) / (1.0 - s) - 1.0 : -1.0;
  b = s;
}

}  // namespace

// The unit reference triangle maps affinely to the biunit triangle
// (r, s) = (2 xi - 1, 2 eta - 1) with Jacobian 1/4, so the orthonormal modes
// are twice the biunit Dubiner modes.
std::vector<double> modal_basis_triangle(int p, Point ref) {
  check_order(p, "modal_basis_triangle");
  double a = 0.0, b = 0.0;
  collapse(2.0 * ref.x - 1.0, 2.0 * ref.y - 1.0, a, b);
  std::vector<double> out;
  out.reserve(triangle_mode_count(p));
  for (int d = 0; d <= p; ++d) {
    for (int i = d; i >= 0; --i) {
      const int j = d - i;
      const double h1 = jacobi_p(i, 0.0, 0.0, a);
      const double h2 = jacobi_p(j, 2.0 * i + 1.0, 0.0, b);
      out.push_back(2.0 * std::sqrt(2.0) * h1 * h2 * std::pow(1.0 - b, i));
    }
  }
  return out;
}

std::vector<Vec2> modal_basis_triangle_gradients(int p, Point ref) {
  check_order(p, "modal_basis_triangle_gradients");
  double a = 0.0, b = 0.0;
  collapse(2.0 * ref.x - 1.0, 2.0 * ref.y - 1.0, a, b);
  std::vector<Vec2> out;
  out.reserve(triangle_mode_count(p));
  for (int d = 0; d <= p; ++d) {
    for (int i = d; i >= 0; --i) {
      const int j = d - i;
      const double fa = jacobi_p(i, 0.0, 0.0, a);
      const double gb = jacobi_p(j, 2.0 * i + 1.0, 0.0, b);
      const double dfa = grad_jacobi_p(i, 0.0, 0.0, a);
      const double dgb = grad_jacobi_p(j, 2.0 * i + 1.0, 0.0, b);
      const double half = 0.5 * (1.0 - b);
      double dr = dfa * gb;
      if (i > 0) dr *= std::pow(half, i - 1);
      double ds = dfa * (gb * (0.5 * (1.0 + a)));
      if (i > 0) ds *= std::pow(half, i - 1);
      double tmp = dgb * std::pow(half, i);
      if (i > 0) tmp -= 0.5 * i * gb * std::pow(half, i - 1);
      ds += fa * tmp;
      const double scale = std::pow(2.0, i + 0.5);
      // d/dxi = 2 d/dr, and the factor 2 of the mode normalisation.
      out.push_back({4.0 * scale * dr, 4.0 * scale * ds});
    }
  }
  return out;
}

}  // namespace vmsdg
