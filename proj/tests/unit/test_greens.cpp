#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "vmsdg/greens.hpp"

using namespace vmsdg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("green's function boundary values, continuity and jump") {
  for (ADParams p : {ADParams{0.5, 0.15, 1.0 / 3.0}, ADParams{-1.0, 1.0, 1.0}, ADParams{2.0, 0.3, 0.5}}) {
    for (double s : {0.1, 0.5, 0.8}) {
      const double x = s * p.h;
      CHECK_THAT(green_eval(p, x, 0.0), WithinAbs(0.0, 1e-14));
      CHECK_THAT(green_eval(p, x, p.h), WithinAbs(0.0, 1e-14));
      const double below = green_eval(p, x, std::nextafter(x, 0.0));
      const double at = green_eval(p, x, x);
      CHECK_THAT(below, WithinRel(at, 1e-12));
      const double e = 1e-6 * p.h;
      // Second-order one-sided differences.
      const double g1 = (3 * green_eval(p, x, x) - 4 * green_eval(p, x, x - e) + green_eval(p, x, x - 2 * e)) / (2 * e);
      const double g2 = (-3 * green_eval(p, x, x) + 4 * green_eval(p, x, x + e) - green_eval(p, x, x + 2 * e)) / (2 * e);
      CHECK_THAT(p.nu * (g1 - g2), WithinRel(1.0, 1e-6));
    }
  }
  CHECK_THROWS_AS(green_eval({0.5, 0.15, 1.0}, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(green_eval({0.5, 0.15, 1.0}, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(green_eval({0.5, 0.0, 1.0}, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("tau values") {
  CHECK_THAT(tau({1e-10, 1.0, 1.0}), WithinRel(1.0 / 12.0, 1e-6));
  CHECK_THAT(tau({0.5, 0.15, 1.0 / 3.0}), WithinRel(tau_gamma_oracle({0.5, 0.15, 1.0 / 3.0}, 48).tau, 1e-8));
  CHECK_THAT(tau({0.5, 0.15, 1.0 / 3.0}), WithinAbs(6.05e-2, 5e-4));
  CHECK_THAT(tau({0.5, 0.001, 0.1}), WithinRel(0.1 / 1.0 - 0.001 / 0.25, 1e-6));
  CHECK_THAT(tau({1.0, 1.0, 1.0}), WithinRel(0.5 - 1.0 + 1.0 / (std::exp(1.0) - 1.0), 1e-12));
  CHECK_THAT(tau_gamma_oracle({1.0, 1.0, 1.0}, 32).tau, WithinAbs(0.5 - 1.0 + 1.0 / (std::exp(1.0) - 1.0), 1e-8));
  CHECK_THROWS_AS(tau({0.5, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(tau({0.5, 1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("gamma values") {
  const auto [g0, g1] = gammas({1e-10, 0.5, 1.0});
  CHECK_THAT(g0, WithinRel(1.0, 1e-6));
  CHECK_THAT(std::abs(g1), WithinRel(1.0, 1e-6));
  const ADParams p{0.5, 0.15, 1.0 / 3.0};
  const GreenQuantities ref = tau_gamma_oracle(p, 48);
  const auto [c0, c1] = gammas(p);
  CHECK_THAT(c0, WithinRel(ref.gamma0, 1e-8));
  CHECK_THAT(c1, WithinRel(ref.gamma1, 1e-8));
  CHECK_THROWS_AS(gammas({0.5, -1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("gamma sign symmetry and tau symmetry") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ua(0.01, 5.0), unu(0.01, 2.0), uh(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = ua(rng), nu = unu(rng), h = uh(rng);
    const GreenQuantities plus = green_quantities({a, nu, h});
    const GreenQuantities minus = green_quantities({-a, nu, h});
    CHECK_THAT(minus.gamma0, WithinRel(-plus.gamma1, 1e-12));
    CHECK_THAT(minus.gamma1, WithinRel(-plus.gamma0, 1e-12));
    CHECK_THAT(minus.tau, WithinRel(plus.tau, 1e-12));
  }
}

TEST_CASE("series and closed-form branches agree near the switch") {
  for (double nu : {0.1, 1.0})
    for (double h : {0.2, 1.0})
      for (int k = -100; k <= 100; ++k) {
        if (k == 0) continue;
        const double z = kSeriesThreshold * (1.0 + 0.002 * k);
        for (double sign : {-1.0, 1.0}) {
          const ADParams p{sign * z * nu / h, nu, h};
          CHECK_THAT(tau_series(p), WithinRel(tau_closed_form(p), 1e-10));
          const auto s = gammas_series(p), c = gammas_closed_form(p);
          CHECK_THAT(s.first, WithinRel(c.first, 1e-10));
          CHECK_THAT(s.second, WithinRel(c.second, 1e-10));
        }
      }
}

TEST_CASE("no overflow for large Peclet numbers") {
  for (double z = -700.0; z <= 700.0; z += 1.3) {
    const GreenQuantities g = green_quantities({z, 1.0, 1.0});
    CHECK(std::isfinite(g.tau));
    CHECK(std::isfinite(g.gamma0));
    CHECK(std::isfinite(g.gamma1));
  }
  const GreenQuantities g = green_quantities({0.5, 0.001, 0.1});
  CHECK(std::isfinite(g.gamma0));
  CHECK(std::isfinite(g.gamma1));
}

TEST_CASE("oracle self-convergence") {
  for (ADParams p : {ADParams{0.5, 0.15, 1.0 / 3.0}, ADParams{5.0, 1.0, 1.0}, ADParams{-2.0, 0.5, 1.0}}) {
    const GreenQuantities exact = green_quantities(p);
    auto err = [&](int n) {
      const GreenQuantities o = tau_gamma_oracle(p, n);
      return std::max({std::abs(o.tau - exact.tau) / std::abs(exact.tau),
                       std::abs(o.gamma0 - exact.gamma0) / std::abs(exact.gamma0),
                       std::abs(o.gamma1 - exact.gamma1) / std::abs(exact.gamma1)});
    };
    const double e16 = err(16), e32 = err(32);
    CHECK(e32 <= std::max(e16 / 10.0, 1e-14));
  }
  CHECK_THROWS_AS(tau_gamma_oracle({0.5, 0.15, 1.0}, 8), std::invalid_argument);
}
