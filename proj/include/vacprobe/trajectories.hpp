#pragma once

// Probe worldlines in 3+1 Minkowski space, natural units (hbar = c = 1).
// Inertial probes sit at a fixed spatial point with proper time equal to
// coordinate time; uniformly accelerated probes ride the left/right branches
// x^2 - t^2 = (L/2)^2 with proper acceleration 2/L.

#include <array>
#include <variant>

#include "vacprobe/windows.hpp"

namespace vacprobe {

using Vec3 = std::array<double, 3>;

inline double norm_sq(const Vec3& v) {
  return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
}

struct InertialTrajectory {
  Vec3 position{0.0, 0.0, 0.0};
};

enum class Branch { Left, Right };

struct HyperbolicTrajectory {
  Branch branch = Branch::Right;
  double scale = 1.0;  // L > 0; closest approach to the origin is L/2
};

using Trajectory = std::variant<InertialTrajectory, HyperbolicTrajectory>;

struct Event {
  double t = 0.0;
  Vec3 x{0.0, 0.0, 0.0};
};

Trajectory make_inertial(const Vec3& position);
Trajectory make_hyperbolic(Branch branch, double scale);

Event position_at(const Trajectory& traj, double tau);

bool is_inertial(const Trajectory& traj);

struct ProbeParams {
  double gap = 1.0;  // energy gap, inverse time
  Trajectory trajectory;
  CouplingWindow window;
  double window_center = 0.0;  // switching midpoint in the probe's proper time
};

// True iff every pair of events on the two active worldline segments is
// spacelike separated. Closed form for inertial pairs and opposite-branch
// hyperbolic pairs; a refined grid scan otherwise.
bool causally_disconnected(const Trajectory& traj_a, const CouplingWindow& win_a,
                           double center_a, const Trajectory& traj_b,
                           const CouplingWindow& win_b, double center_b);

bool causally_disconnected(const ProbeParams& a, const ProbeParams& b);

}  // namespace vacprobe
