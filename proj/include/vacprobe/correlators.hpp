#pragma once

// Vacuum two-point function D+(x',x) = <0| phi(x') phi(x) |0> of the massless
// scalar field in 3+1 dimensions, with the standard i-epsilon shift of the
// time difference, plus the closed forms it takes along uniformly accelerated
// worldlines.

#include <complex>
#include <vector>

#include "vacprobe/trajectories.hpp"

namespace vacprobe {

// Distributional regulator: a primary epsilon plus a strictly decreasing
// ladder used for extrapolation of regularized integrals to epsilon -> 0.
struct Regulator {
  double epsilon = 1e-2;
  std::vector<double> ladder{1e-2, 5e-3, 2.5e-3, 1.25e-3};

  // Ladder scaled to a characteristic time of the problem at hand.
  static Regulator for_scale(double scale);
  void validate() const;
};

// D+ between events separated by dt in time and dx in space:
//   -1 / (4 pi^2 [ (dt - i eps)^2 - |dx|^2 ]),  eps > 0.
std::complex<double> wightman_minkowski(double dt, const Vec3& dx, double eps);

// Both points on one hyperbolic branch of scale L, proper-time difference
// dtau:  -1 / (4 pi^2 L^2 sinh^2[ (dtau - i eps) / L ]),  eps > 0.
std::complex<double> wightman_hyperbolic_same(double dtau, double L, double eps);

// Points on opposite branches, proper-time sum tau_sum:
//   +1 / (4 pi^2 L^2 cosh^2[ (tau_sum - i eps) / L ]),  eps >= 0 (no real
// singularity).
std::complex<double> wightman_hyperbolic_cross(double tau_sum, double L, double eps);

}  // namespace vacprobe
