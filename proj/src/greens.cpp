#include "vmsdg/greens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmsdg/quadrature.hpp"

namespace vmsdg {

namespace {

void check_params(const ADParams& p) {
  if (!(p.nu > 0.0)) throw std::invalid_argument("greens: nu must be positive");
  if (!(p.h > 0.0)) throw std::invalid_argument("greens: h must be positive");
  if (!std::isfinite(p.a)) throw std::invalid_argument("greens: a must be finite");
}

void check_green_domain(const ADParams& p, double x) {
  check_params(p);
  if (p.a == 0.0) throw std::invalid_argument("green_eval: a = 0 is not supported");
  if (!(x > 0.0 && x < p.h))
    throw std::invalid_argument("green_eval: source point must lie strictly inside (0, h)");
}

double peclet(const ADParams& p) { return p.a * p.h / p.nu; }

// 1/(e^z - 1) without forming e^{|z|}.
double inv_expm1(double z) {
  if (z > 0.0) return std::exp(-z) / (-std::expm1(-z));
  return 1.0 / std::expm1(z);
}

// (B(z) - 1)/z with B(z) = z/(e^z - 1).
double bernoulli_ratio(double z) { return inv_expm1(z) - 1.0 / z; }

double bernoulli_ratio_series(double z) {
  const double z2 = z * z;
  return -0.5 +
         z * (1.0 / 12.0 +
              z2 * (-1.0 / 720.0 +
                    z2 * (1.0 / 30240.0 +
                          z2 * (-1.0 / 1209600.0 +
                                z2 * (1.0 / 47900160.0 + z2 * (-691.0 / 1307674368000.0))))));
}

}  // namespace

double green_eval(const ADParams& p, double x, double y) {
  check_green_domain(p, x);
  if (y < 0.0 || y > p.h) throw std::invalid_argument("green_eval: field point outside [0, h]");
  const double s = p.a / p.nu;
  const double h = p.h;
  if (y < x) {
    if (s > 0.0) return (-std::expm1(s * (x - h))) * std::expm1(-s * y) / (p.a * std::expm1(-s * h));
    const double num = std::exp(s * (h - y)) - std::exp(s * (x - y)) - std::exp(s * h) + std::exp(s * x);
    return num / (p.a * (-std::expm1(s * h)));
  }
  if (s > 0.0) {
    const double num = (std::exp(s * (x - y)) - std::exp(-s * y)) * (-std::expm1(-s * (h - y)));
    return num / (p.a * (-std::expm1(-s * h)));
  }
  return std::expm1(s * x) * std::expm1(s * (h - y)) / (p.a * std::expm1(s * h));
}

std::pair<double, double> green_boundary_derivatives(const ADParams& p, double x) {
  check_green_domain(p, x);
  const double s = p.a / p.nu;
  const double h = p.h;
  double d0 = 0.0, dh = 0.0;
  if (s > 0.0) {
    d0 = -(-std::expm1(s * (x - h))) / std::expm1(-s * h) / p.nu;
    dh = -(std::exp(s * (x - h)) - std::exp(-s * h)) / (-std::expm1(-s * h)) / p.nu;
  } else {
    d0 = -(std::exp(s * h) - std::exp(s * x)) / (-std::expm1(s * h)) / p.nu;
    dh = -std::expm1(s * x) / std::expm1(s * h) / p.nu;
  }
  return {d0, dh};
}

double tau_closed_form(const ADParams& p) {
  check_params(p);
  const double z = peclet(p);
  if (z == 0.0) throw std::invalid_argument("tau_closed_form: undefined at a = 0");
  // tau = (h^2/nu) (B(z) - 1 + z/2) / z^2
  return p.h * p.h / p.nu * (bernoulli_ratio(z) + 0.5) / z;
}

double tau_series(const ADParams& p) {
  check_params(p);
  const double z = peclet(p);
  const double z2 = z * z;
  const double poly =
      1.0 / 12.0 +
      z2 * (-1.0 / 720.0 +
            z2 * (1.0 / 30240.0 +
                  z2 * (-1.0 / 1209600.0 + z2 * (1.0 / 47900160.0 + z2 * (-691.0 / 1307674368000.0)))));
  return p.h * p.h / p.nu * poly;
}

std::pair<double, double> gammas_closed_form(const ADParams& p) {
  check_params(p);
  const double z = peclet(p);
  if (z == 0.0) throw std::invalid_argument("gammas_closed_form: undefined at a = 0");
  return {-bernoulli_ratio(-z) / p.nu, bernoulli_ratio(z) / p.nu};
}

std::pair<double, double> gammas_series(const ADParams& p) {
  check_params(p);
  const double z = peclet(p);
  return {-bernoulli_ratio_series(-z) / p.nu, bernoulli_ratio_series(z) / p.nu};
}

double tau(const ADParams& p) {
  check_params(p);
  return std::abs(peclet(p)) < kSeriesThreshold ? tau_series(p) : tau_closed_form(p);
}

std::pair<double, double> gammas(const ADParams& p) {
  check_params(p);
  return std::abs(peclet(p)) < kSeriesThreshold ? gammas_series(p) : gammas_closed_form(p);
}

GreenQuantities green_quantities(const ADParams& p) {
  const auto [g0, g1] = gammas(p);
  return {tau(p), g0, g1};
}

GreenQuantities tau_gamma_oracle(const ADParams& p, int n_quad) {
  check_params(p);
  if (p.a == 0.0) throw std::invalid_argument("tau_gamma_oracle: a = 0 is not supported");
  if (n_quad < 16) throw std::invalid_argument("tau_gamma_oracle: n_quad must be at least 16");
  const QuadratureRule g = gauss_rule_1d(std::min(n_quad, 64));
  // Panels no wider than a few boundary-layer widths nu/|a|.
  const double width = 4.0 * p.nu / std::abs(p.a);
  const int panels = std::max(1, static_cast<int>(std::ceil(p.h / width)));

  auto integrate = [&](double lo, double hi, auto&& fn) {
    const int m = std::max(1, static_cast<int>(std::ceil((hi - lo) / p.h * panels)));
    const double step = (hi - lo) / m;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      const double a = lo + k * step;
      for (std::size_t q = 0; q < g.size(); ++q)
        sum += 0.5 * step * g.weights[q] * fn(a + 0.5 * step * (1.0 + g.points[q].x));
    }
    return sum;
  };

  GreenQuantities out;
  out.tau = integrate(0.0, p.h, [&](double x) {
              return integrate(0.0, x, [&](double y) { return green_eval(p, x, y); }) +
                     integrate(x, p.h, [&](double y) { return green_eval(p, x, y); });
            }) /
            p.h;
  out.gamma0 = integrate(0.0, p.h, [&](double x) { return green_boundary_derivatives(p, x).first; }) / p.h;
  out.gamma1 = integrate(0.0, p.h, [&](double x) { return green_boundary_derivatives(p, x).second; }) / p.h;
  return out;
}

}  // namespace vmsdg
