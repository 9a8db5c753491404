#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "vacprobe/quadrature.hpp"
#include "vacprobe/windows.hpp"

using namespace vacprobe;

namespace {

// Independent transform oracle: direct quadrature of the defining integral.
// Even real profiles give 2 * int_0^h eps(t) cos(omega t) dt.
double ft_oracle(const CouplingWindow& w, double omega) {
  const double h = window_half_width(w);
  const double panel = std::min(h, std::numbers::pi / (4.0 * std::max(std::abs(omega), 1.0)));
  return 2.0 * quad::gauss_legendre_panels<double>(
                   [&](double t) { return window_value(w, t) * std::cos(omega * t); }, 0.0,
                   h, panel);
}

}  // namespace

TEST_SUITE("windows") {

TEST_CASE("cos^2 profile values") {
  const CouplingWindow w = make_cos2(1.0);
  CHECK(window_value(w, 0.0) == doctest::Approx(1.0));
  CHECK(window_value(w, 0.5) == 0.0);
  CHECK(window_value(w, -0.5) == 0.0);
  CHECK(window_value(w, 0.7) == 0.0);
  CHECK(window_value(w, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(window_half_width(w) == doctest::Approx(0.5));
  CHECK(window_vanishes_at_edges(w));
}

TEST_CASE("cos^2 transform special values") {
  const CouplingWindow w = make_cos2(1.0);
  // Mean of cos^2 over its support.
  CHECK(window_ft(w, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  // Removable singularity at omega = 2 pi / T; oracle-checked limit T/4.
  CHECK(window_ft(w, 2.0 * std::numbers::pi) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(window_ft(w, 2.0 * std::numbers::pi) ==
        doctest::Approx(ft_oracle(w, 2.0 * std::numbers::pi)).epsilon(1e-10));
  CHECK(std::abs(window_ft(w, 100.0) - ft_oracle(w, 100.0)) < 1e-10);
}

TEST_CASE("closed forms match the quadrature oracle on a wide grid") {
  const CouplingWindow families[] = {make_cos2(1.0), make_cos2(2.7, 0.6),
                                     make_gaussian(0.3, 1.0, 1.5), make_boxcar(0.5),
                                     make_gaussian(0.11, 2.0)};
  for (const auto& w : families) {
    for (double om = -200.0; om <= 200.0; om += 8.7) {
      CAPTURE(window_kind(w));
      CAPTURE(om);
      CHECK(std::abs(window_ft(w, om) - ft_oracle(w, om)) < 1e-10);
    }
  }
}

TEST_CASE("transform is exactly even and scales linearly in the amplitude") {
  const CouplingWindow w = make_cos2(1.3, 0.8);
  const CouplingWindow w2 = window_with_amplitude(w, 1.6);
  for (double om : {0.17, 1.0, 4.833, 31.4, 199.0}) {
    CHECK(window_ft(w, om) == window_ft(w, -om));
    CHECK(window_ft(w2, om) == doctest::Approx(2.0 * window_ft(w, om)).epsilon(1e-15));
  }
}

TEST_CASE("transform decays inside the cubic envelope") {
  const double T = 1.0, A = 1.0;
  const CouplingWindow w = make_cos2(T, A);
  const double b = 2.0 * std::numbers::pi / T;
  for (double om : {50.0, 100.0, 200.0, 500.0}) {
    CHECK(std::abs(window_ft(w, om)) <= (4.0 / 3.0) * A * b * b / (om * om * om));
  }
}

TEST_CASE("tail bounds shrink with the cutoff; boxcar emission is divergent") {
  const CouplingWindow w = make_cos2(1.0);
  const double t1 = emission_tail_bound(w, 5.0, 50.0).reducible;
  const double t2 = emission_tail_bound(w, 5.0, 100.0).reducible;
  CHECK(t2 < t1);
  CHECK(t2 > 0.0);
  CHECK(std::isinf(emission_tail_bound(make_boxcar(0.5), 5.0, 1e6).reducible));
  // Truncated Gaussian: finite reducible part plus a switching-jump floor.
  const TailBound tg = emission_tail_bound(make_gaussian(0.1, 1.0, 0.5), 5.0, 200.0);
  CHECK(std::isfinite(tg.reducible));
  CHECK(tg.irreducible > 0.0);
  CHECK(tg.irreducible < 1e-6);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(make_cos2(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_cos2(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_gaussian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_boxcar(0.0), std::invalid_argument);
}

TEST_CASE("gaussian profile respects truncation") {
  const CouplingWindow w = make_gaussian(0.2, 1.5);  // default half width 5 sigma = 1
  CHECK(window_half_width(w) == doctest::Approx(1.0));
  CHECK(window_value(w, 0.0) == doctest::Approx(1.5));
  CHECK(window_value(w, 1.0001) == 0.0);
  CHECK_FALSE(window_vanishes_at_edges(w));
}

}  // TEST_SUITE
