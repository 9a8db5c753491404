#include <cmath>

#include "doctest.h"
#include "vacprobe/trajectories.hpp"

using namespace vacprobe;

TEST_SUITE("trajectories") {

TEST_CASE("hyperbolic positions at the turning point and beyond") {
  const Trajectory right = make_hyperbolic(Branch::Right, 2.0);
  const Event e0 = position_at(right, 0.0);
  CHECK(e0.t == doctest::Approx(0.0));
  CHECK(e0.x[0] == doctest::Approx(1.0));

  const Trajectory left = make_hyperbolic(Branch::Left, 2.0);
  CHECK(position_at(left, 0.0).x[0] == doctest::Approx(-1.0));

  const Trajectory r1 = make_hyperbolic(Branch::Right, 1.0);
  const Event e = position_at(r1, 0.5);
  CHECK(e.t == doctest::Approx(0.5 * std::sinh(1.0)).epsilon(1e-15));
  CHECK(e.x[0] == doctest::Approx(0.5 * std::cosh(1.0)).epsilon(1e-15));
}

TEST_CASE("inertial probes sit still with tau = t") {
  const Trajectory traj = make_inertial({0.3, -0.1, 2.0});
  const Event e = position_at(traj, -4.2);
  CHECK(e.t == doctest::Approx(-4.2));
  CHECK(e.x[0] == doctest::Approx(0.3));
  CHECK(e.x[2] == doctest::Approx(2.0));
}

TEST_CASE("hyperbolic branches satisfy the on-shell relation") {
  for (double L : {0.5, 1.0, 3.0}) {
    for (Branch b : {Branch::Left, Branch::Right}) {
      const Trajectory traj = make_hyperbolic(b, L);
      for (double tau = -10.0 * L; tau <= 10.0 * L; tau += 0.73 * L) {
        const Event e = position_at(traj, tau);
        const double lhs = e.x[0] * e.x[0] - e.t * e.t;
        const double scale = std::max(0.25 * L * L, e.x[0] * e.x[0]);
        CHECK(std::abs(lhs - 0.25 * L * L) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("proper-time normalization by central differences") {
  const Trajectory traj = make_hyperbolic(Branch::Right, 1.7);
  const double h = 1e-5;
  for (double tau : {-2.0, -0.3, 0.0, 1.1, 4.0}) {
    const Event ep = position_at(traj, tau + h);
    const Event em = position_at(traj, tau - h);
    const double dt = (ep.t - em.t) / (2.0 * h);
    const double dx = (ep.x[0] - em.x[0]) / (2.0 * h);
    CHECK(dt * dt - dx * dx == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("inertial causal disconnection reduces to duration vs distance") {
  const Trajectory a = make_inertial({-0.5, 0, 0});
  const Trajectory b = make_inertial({+0.5, 0, 0});
  CHECK(causally_disconnected(a, make_boxcar(0.495), 0.0, b, make_boxcar(0.495), 0.0));
  CHECK_FALSE(causally_disconnected(a, make_boxcar(0.75), 0.0, b, make_boxcar(0.75), 0.0));
  // cos^2 switches off exactly at the support edge, so grazing is allowed.
  CHECK(causally_disconnected(a, make_cos2(1.0), 0.0, b, make_cos2(1.0), 0.0));
  CHECK_FALSE(causally_disconnected(a, make_boxcar(0.5), 0.0, b, make_boxcar(0.5), 0.0));
  // Shifting one window closes the gap.
  CHECK_FALSE(causally_disconnected(a, make_cos2(1.0), 0.0, b, make_cos2(1.0), 0.8));
}

TEST_CASE("opposite hyperbolic branches are disconnected for any finite window") {
  const Trajectory a = make_hyperbolic(Branch::Left, 1.0);
  const Trajectory b = make_hyperbolic(Branch::Right, 1.0);
  CHECK(causally_disconnected(a, make_cos2(200.0), 0.0, b, make_cos2(200.0), 40.0));
}

TEST_CASE("a shared branch is causally connected") {
  const Trajectory a = make_hyperbolic(Branch::Right, 1.0);
  const Trajectory b = make_hyperbolic(Branch::Right, 1.0);
  CHECK_FALSE(causally_disconnected(a, make_cos2(2.0), 0.0, b, make_cos2(2.0), 0.5));
}

TEST_CASE("probe-level overload and validation") {
  ProbeParams a{1.0, make_inertial({-0.5, 0, 0}), make_cos2(0.9), 0.0};
  ProbeParams b{1.0, make_inertial({+0.5, 0, 0}), make_cos2(0.9), 0.0};
  CHECK(causally_disconnected(a, b));
  CHECK_THROWS_AS(position_at(a.trajectory, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(make_hyperbolic(Branch::Left, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
