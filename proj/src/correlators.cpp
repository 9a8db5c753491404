#include "vacprobe/correlators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vacprobe {

namespace {
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

void require_regulator(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("wightman: regulator epsilon must be > 0");
}
}  // namespace

Regulator Regulator::for_scale(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("Regulator::for_scale: scale must be > 0");
  Regulator r;
  r.epsilon *= scale;
  for (double& e : r.ladder) e *= scale;
  return r;
}

void Regulator::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("Regulator: epsilon must be > 0");
  if (ladder.empty()) throw std::invalid_argument("Regulator: empty ladder");
  double prev = std::numeric_limits<double>::infinity();
  for (double e : ladder) {
    if (!(e > 0.0) || !(e < prev))
      throw std::invalid_argument("Regulator: ladder must be strictly decreasing and > 0");
    prev = e;
  }
}

std::complex<double> wightman_minkowski(double dt, const Vec3& dx, double eps) {
  require_regulator(eps);
  const std::complex<double> z(dt, -eps);
  return -1.0 / (kFourPiSq * (z * z - norm_sq(dx)));
}

std::complex<double> wightman_hyperbolic_same(double dtau, double L, double eps) {
  require_regulator(eps);
  if (!(L > 0.0)) throw std::invalid_argument("wightman_hyperbolic_same: L must be > 0");
  const std::complex<double> s = std::sinh(std::complex<double>(dtau, -eps) / L);
  return -1.0 / (kFourPiSq * L * L * s * s);
}

std::complex<double> wightman_hyperbolic_cross(double tau_sum, double L, double eps) {
  if (eps < 0.0) throw std::invalid_argument("wightman_hyperbolic_cross: epsilon must be >= 0");
  if (!(L > 0.0)) throw std::invalid_argument("wightman_hyperbolic_cross: L must be > 0");
  const std::complex<double> c = std::cosh(std::complex<double>(tau_sum, -eps) / L);
  return 1.0 / (kFourPiSq * L * L * c * c);
}

}  // namespace vacprobe
