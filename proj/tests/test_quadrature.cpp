#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "vacprobe/quadrature.hpp"

using namespace vacprobe;
using Complex = std::complex<double>;
namespace q = vacprobe::quad;

TEST_SUITE("quadrature") {

TEST_CASE("gk15 panel on polynomials and sine") {
  auto [v1, e1] = q::gk15<double>([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(v1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  auto [v2, e2] = q::gk15<double>([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(v2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("adaptive 1d handles oscillation with pre-split panels") {
  const double w = 37.0;
  std::vector<double> pts;
  for (double x = 0.0; x < 10.0; x += 0.25) pts.push_back(x);
  pts.push_back(10.0);
  auto res = q::integrate_adaptive<double>([w](double x) { return std::cos(w * x); }, pts,
                                           1e-12, 1e-12);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(std::sin(10.0 * w) / w).epsilon(1e-10));
}

TEST_CASE("adaptive 1d complex near-singular") {
  const double eps = 1e-3;
  auto f = [eps](double x) {
    const Complex z(x, -eps);
    return 1.0 / (z * z);
  };
  auto res = q::integrate_adaptive<Complex>(f, -1.0, 1.0, 0.0, 1e-10, 20000);
  // Antiderivative -1/(x - i eps): exact value is -2/(1 + eps^2).
  const Complex exact(-2.0 / (1.0 + eps * eps), 0.0);
  CHECK(res.converged);
  CHECK(std::abs(res.value - exact) <= 1e-9);
}

TEST_CASE("adaptive 2d separable product") {
  auto f = [](double x, double y) { return x * y; };
  auto res = q::integrate_adaptive_2d<double>(f, 0.0, 1.0, 0.0, 1.0, 0.0, 1e-12);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("adaptive 2d resolves an axis-aligned ridge with thin strips") {
  const double eps = 1e-4;
  auto f = [eps](double u, double v) {
    return eps / (u * u + eps * eps) * (1.0 + 0.5 * std::cos(v));
  };
  auto res = q::integrate_adaptive_2d<double>(f, -1.0, 1.0, -2.0, 2.0, 0.0, 1e-8);
  const double exact = 2.0 * std::atan(1.0 / eps) * (4.0 + std::sin(2.0) - std::sin(-2.0));
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(exact).epsilon(1e-7));
  // Anisotropic splitting keeps the cell count far below a full quadtree.
  CHECK(res.subdivisions < 4000);
}

TEST_CASE("richardson removes linear and quadratic terms") {
  std::vector<double> h{0.08, 0.04, 0.02, 0.01};
  std::vector<double> y;
  for (double hi : h) y.push_back(3.0 + 2.0 * hi + 0.7 * hi * hi);
  auto [limit, err] = q::richardson<double>(h, y);
  CHECK(limit == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(err < 1e-6);
}

TEST_CASE("richardson rejects bad ladders") {
  CHECK_THROWS_AS((q::richardson<double>({0.1, 0.2}, {1.0, 2.0})), std::invalid_argument);
  CHECK_THROWS_AS((q::richardson<double>({0.1, 0.0}, {1.0, 2.0})), std::invalid_argument);
}

TEST_CASE("gauss-legendre panels integrate fast oscillation") {
  const double w = 50.0;
  const double val = q::gauss_legendre_panels<double>(
      [w](double t) { return std::cos(w * t); }, 0.0, 2.0 * std::numbers::pi,
      std::numbers::pi / (4.0 * w));
  CHECK(std::abs(val - std::sin(2.0 * std::numbers::pi * w) / w) < 1e-13);
}

}  // TEST_SUITE
