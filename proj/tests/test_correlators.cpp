#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vacprobe/correlators.hpp"
#include "vacprobe/quadrature.hpp"

using namespace vacprobe;
using Complex = std::complex<double>;

namespace {
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;
}

TEST_SUITE("correlators") {

TEST_CASE("spacelike and timelike reference values") {
  const Complex sp = wightman_minkowski(0.0, {1.0, 0.0, 0.0}, 1e-10);
  CHECK(sp.real() == doctest::Approx(1.0 / kFourPiSq).epsilon(1e-12));
  CHECK(std::abs(sp.imag()) < 1e-12);

  const Complex tl = wightman_minkowski(2.0, {0.0, 0.0, 0.0}, 1e-10);
  CHECK(tl.real() == doctest::Approx(-1.0 / (4.0 * kFourPiSq)).epsilon(1e-9));
}

TEST_CASE("hermiticity under time reversal") {
  const Vec3 dx{0.4, -0.2, 1.1};
  for (double dt : {-1.7, 0.3, 2.2}) {
    const Complex a = wightman_minkowski(dt, dx, 1e-3);
    const Complex b = wightman_minkowski(-dt, dx, 1e-3);
    CHECK(std::abs(a - std::conj(b)) < 1e-18);
  }
}

TEST_CASE("mode-sum oracle fixes sign and prefactor at the same spatial point") {
  // D+(dt) = (1/4 pi^2) int_0^inf w e^{-i w (dt - i eps)} dw, evaluated by
  // quadrature and compared against the closed rational form.
  const double eps = 0.05;
  for (double dt : {0.0, 0.7, -1.3}) {
    auto f = [dt, eps](double w) {
      return w * std::exp(Complex(0.0, -w * dt)) * std::exp(-w * eps) / kFourPiSq;
    };
    std::vector<double> pts;
    const double wmax = 60.0 / eps;
    const double step = std::numbers::pi / (4.0 * std::max(std::abs(dt), 0.1));
    for (double x = 0.0; x < wmax; x += step) pts.push_back(x);
    pts.push_back(wmax);
    auto res = quad::integrate_adaptive<Complex>(f, pts, 0.0, 1e-12, 60000);
    REQUIRE(res.converged);
    const Complex closed = wightman_minkowski(dt, {0.0, 0.0, 0.0}, eps);
    CHECK(std::abs(res.value - closed) <= 1e-10 * std::abs(closed));
  }
}

TEST_CASE("hyperbolic same-branch closed form") {
  const Complex v = wightman_hyperbolic_same(1.0, 1.0, 1e-9);
  const double expected = -1.0 / (kFourPiSq * std::sinh(1.0) * std::sinh(1.0));
  CHECK(v.real() == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("hyperbolic cross-branch closed form") {
  CHECK(wightman_hyperbolic_cross(0.0, 1.0, 0.0).real() ==
        doctest::Approx(1.0 / kFourPiSq).epsilon(1e-14));
  CHECK(wightman_hyperbolic_cross(2.0, 1.0, 0.0).real() ==
        doctest::Approx(1.0 / (kFourPiSq * std::pow(std::cosh(2.0), 2))).epsilon(1e-14));
}

TEST_CASE("closed forms agree with the Minkowski correlator composed with the worldlines") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  const double eps = 1e-13;
  for (double L : {0.7, 1.0, 2.3}) {
    const Trajectory left = make_hyperbolic(Branch::Left, L);
    const Trajectory right = make_hyperbolic(Branch::Right, L);
    for (int k = 0; k < 24; ++k) {
      const double tau = U(rng) * L;
      double tau_p = U(rng) * L;
      if (std::abs(tau_p - tau) < 0.05 * L) tau_p += 0.2 * L;  // stay off the light cone

      // Same branch: D+(A', A) with A' at tau_p.
      const Event a1 = position_at(left, tau_p);
      const Event a0 = position_at(left, tau);
      const Complex direct = wightman_minkowski(
          a1.t - a0.t, {a1.x[0] - a0.x[0], a1.x[1] - a0.x[1], a1.x[2] - a0.x[2]}, eps);
      const Complex closed = wightman_hyperbolic_same(tau_p - tau, L, eps);
      CHECK(std::abs(direct - closed) <= 1e-10 * std::abs(closed));

      // Opposite branches: D+(A, B) depends on the proper-time sum.
      const Event pa = position_at(left, tau);
      const Event pb = position_at(right, tau_p);
      const Complex direct_x = wightman_minkowski(
          pa.t - pb.t, {pa.x[0] - pb.x[0], pa.x[1] - pb.x[1], pa.x[2] - pb.x[2]}, eps);
      const Complex closed_x = wightman_hyperbolic_cross(tau + tau_p, L, 0.0);
      CHECK(std::abs(direct_x - closed_x) <= 1e-10 * std::abs(closed_x));
    }
  }
}

TEST_CASE("cross correlator is even, positive and exponentially clustered") {
  const double L = 1.3;
  for (double s : {0.0, 0.4, 1.9, 5.0}) {
    const double v = wightman_hyperbolic_cross(s, L, 0.0).real();
    const double v_neg = wightman_hyperbolic_cross(-s, L, 0.0).real();
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(v_neg).epsilon(1e-15));
  }
  const double s = 8.0 * L;
  const double asymptotic = 4.0 * std::exp(-2.0 * s / L) / (kFourPiSq * L * L);
  CHECK(wightman_hyperbolic_cross(s, L, 0.0).real() ==
        doctest::Approx(asymptotic).epsilon(1e-3));
}

TEST_CASE("regulator ladder values extrapolate stably") {
  const Regulator reg = Regulator::for_scale(1.0);
  const Vec3 dx{1.0, 0.0, 0.0};
  std::vector<Complex> vals;
  for (double e : reg.ladder) vals.push_back(wightman_minkowski(0.3, dx, e));
  auto [limit, err] = quad::richardson<Complex>(reg.ladder, vals);
  const Complex tiny_eps = wightman_minkowski(0.3, dx, 1e-12);
  CHECK(std::abs(limit - tiny_eps) < 1e-8 * std::abs(tiny_eps));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(wightman_minkowski(0.0, {1, 0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(wightman_minkowski(0.0, {1, 0, 0}, -1e-3), std::invalid_argument);
  CHECK_THROWS_AS(wightman_hyperbolic_same(1.0, -1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(wightman_hyperbolic_cross(1.0, 1.0, -1e-3), std::invalid_argument);
  Regulator bad;
  bad.ladder = {1e-3, 1e-2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(Regulator::for_scale(0.0), std::invalid_argument);
}

}  // TEST_SUITE
