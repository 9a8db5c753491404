#include "vacprobe/trajectories.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vacprobe {

namespace {

// Squared invariant interval between two events, spacelike positive.
double spacelike_interval_sq(const Event& p, const Event& q) {
  const Vec3 d{p.x[0] - q.x[0], p.x[1] - q.x[1], p.x[2] - q.x[2]};
  const double dt = p.t - q.t;
  return norm_sq(d) - dt * dt;
}

double min_interval_on_grid(const Trajectory& ta, double a0, double a1,
                            const Trajectory& tb, double b0, double b1, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double tau_a = a0 + (a1 - a0) * i / n;
    const Event pa = position_at(ta, tau_a);
    for (int j = 0; j <= n; ++j) {
      const double tau_b = b0 + (b1 - b0) * j / n;
      best = std::min(best, spacelike_interval_sq(pa, position_at(tb, tau_b)));
    }
  }
  return best;
}

}  // namespace

Trajectory make_inertial(const Vec3& position) { return InertialTrajectory{position}; }

Trajectory make_hyperbolic(Branch branch, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("make_hyperbolic: scale must be positive");
  return HyperbolicTrajectory{branch, scale};
}

bool is_inertial(const Trajectory& traj) {
  return std::holds_alternative<InertialTrajectory>(traj);
}

Event position_at(const Trajectory& traj, double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("position_at: tau must be finite");
  return std::visit(
      [tau](const auto& t) -> Event {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, InertialTrajectory>) {
          return Event{tau, t.position};
        } else {
          const double half = 0.5 * t.scale;
          const double arg = 2.0 * tau / t.scale;
          const double x = half * std::cosh(arg);
          return Event{half * std::sinh(arg),
                       {t.branch == Branch::Left ? -x : x, 0.0, 0.0}};
        }
      },
      traj);
}

bool causally_disconnected(const Trajectory& traj_a, const CouplingWindow& win_a,
                           double center_a, const Trajectory& traj_b,
                           const CouplingWindow& win_b, double center_b) {
  const double ha = window_half_width(win_a);
  const double hb = window_half_width(win_b);
  if (!std::isfinite(ha) || !std::isfinite(hb))
    throw std::invalid_argument("causally_disconnected: window support must be bounded");
  const double a0 = center_a - ha, a1 = center_a + ha;
  const double b0 = center_b - hb, b1 = center_b + hb;

  const auto* ia = std::get_if<InertialTrajectory>(&traj_a);
  const auto* ib = std::get_if<InertialTrajectory>(&traj_b);
  if (ia && ib) {
    const Vec3 d{ia->position[0] - ib->position[0], ia->position[1] - ib->position[1],
                 ia->position[2] - ib->position[2]};
    const double dist = std::sqrt(norm_sq(d));
    const double max_dt = std::max(a1 - b0, b1 - a0);
    // Lightlike grazing of the support corners is allowed when both profiles
    // switch off exactly at their endpoints.
    if (window_vanishes_at_edges(win_a) && window_vanishes_at_edges(win_b))
      return max_dt <= dist;
    return max_dt < dist;
  }

  const auto* ga = std::get_if<HyperbolicTrajectory>(&traj_a);
  const auto* gb = std::get_if<HyperbolicTrajectory>(&traj_b);
  if (ga && gb && ga->branch != gb->branch) return true;  // opposite Rindler wedges

  // Same-wedge or mixed pairs: scan for the minimum interval, refining around
  // the worst cell twice.
  int n = 96;
  double lo_a = a0, hi_a = a1, lo_b = b0, hi_b = b1;
  double best = min_interval_on_grid(traj_a, lo_a, hi_a, traj_b, lo_b, hi_b, n);
  for (int round = 0; round < 2; ++round) {
    double best_ta = lo_a, best_tb = lo_b;
    for (int i = 0; i <= n; ++i) {
      const double tau_a = lo_a + (hi_a - lo_a) * i / n;
      const Event pa = position_at(traj_a, tau_a);
      for (int j = 0; j <= n; ++j) {
        const double tau_b = lo_b + (hi_b - lo_b) * j / n;
        if (spacelike_interval_sq(pa, position_at(traj_b, tau_b)) <= best) {
          best = spacelike_interval_sq(pa, position_at(traj_b, tau_b));
          best_ta = tau_a;
          best_tb = tau_b;
        }
      }
    }
    const double wa = (hi_a - lo_a) / n, wb = (hi_b - lo_b) / n;
    lo_a = std::max(a0, best_ta - 2 * wa);
    hi_a = std::min(a1, best_ta + 2 * wa);
    lo_b = std::max(b0, best_tb - 2 * wb);
    hi_b = std::min(b1, best_tb + 2 * wb);
    best = std::min(best, min_interval_on_grid(traj_a, lo_a, hi_a, traj_b, lo_b, hi_b, n));
  }
  return best > 0.0;
}

bool causally_disconnected(const ProbeParams& a, const ProbeParams& b) {
  return causally_disconnected(a.trajectory, a.window, a.window_center, b.trajectory,
                               b.window, b.window_center);
}

}  // namespace vacprobe
