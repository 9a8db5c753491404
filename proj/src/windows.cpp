#include "vacprobe/windows.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vacprobe/quadrature.hpp"

namespace vacprobe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// eps~(omega) for A cos^2(pi t / T) on [-T/2, T/2]. The generic closed form
// A sin(omega T/2) b^2 / (omega (b^2 - omega^2)), b = 2 pi / T, has removable
// singularities at omega = 0 and omega = +-b; near each one an algebraically
// rearranged exact form avoids the cancellation.
double cos2_ft(double T, double A, double omega) {
  const double om = std::abs(omega);
  const double b = 2.0 * kPi / T;
  if (om <= 0.5 * b) {
    return A * 0.5 * T * sinc(0.5 * om * T) * b * b / ((b - om) * (b + om));
  }
  if (std::abs(om - b) <= 0.5 * b) {
    const double d = om - b;
    return A * 0.5 * T * sinc(0.5 * d * T) * b * b / (om * (b + om));
  }
  return A * std::sin(0.5 * om * T) * b * b / (om * (b - om) * (b + om));
}

// Truncated Gaussian: full-line transform minus the two tails |t| > W. The
// tail integral is smooth and exponentially small; fixed-order panels resolve
// its oscillation to machine precision.
double gaussian_ft(double sigma, double A, double W, double omega) {
  const double om = std::abs(omega);
  const double full =
      A * std::sqrt(2.0 * kPi) * sigma * std::exp(-0.5 * sigma * sigma * om * om);
  const double smax = sigma * std::sqrt(80.0) - W;
  if (smax <= 0.0) return full;
  auto tail = [&](double s) {
    const double t = W + s;
    return std::exp(-0.5 * t * t / (sigma * sigma)) * std::cos(om * t);
  };
  const double panel =
      std::min(smax, std::min(0.25 * sigma, 0.25 * kPi / std::max(om, 1.0 / sigma)));
  const double tail_val = quad::gauss_legendre_panels<double>(tail, 0.0, smax, panel);
  return full - 2.0 * A * tail_val;
}

double jump_height(const GaussianWindow& g) {
  return g.amplitude * std::exp(-0.5 * g.half_width * g.half_width / (g.sigma * g.sigma));
}

}  // namespace

CouplingWindow make_cos2(double duration, double amplitude) {
  if (!(duration > 0.0) || !(amplitude > 0.0))
    throw std::invalid_argument("make_cos2: duration and amplitude must be positive");
  return CosineSquaredWindow{duration, amplitude};
}

CouplingWindow make_gaussian(double sigma, double amplitude, double half_width) {
  if (!(sigma > 0.0) || !(amplitude > 0.0))
    throw std::invalid_argument("make_gaussian: sigma and amplitude must be positive");
  if (half_width <= 0.0) half_width = 5.0 * sigma;
  if (!std::isfinite(half_width))
    throw std::invalid_argument("make_gaussian: truncation must be finite");
  return GaussianWindow{sigma, amplitude, half_width};
}

CouplingWindow make_boxcar(double half_width, double amplitude) {
  if (!(half_width > 0.0) || !(amplitude > 0.0))
    throw std::invalid_argument("make_boxcar: half_width and amplitude must be positive");
  return BoxcarWindow{half_width, amplitude};
}

double window_value(const CouplingWindow& w, double t) {
  return std::visit(
      [t](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) {
          if (std::abs(t) >= 0.5 * v.duration) return 0.0;
          const double c = std::cos(kPi * t / v.duration);
          return v.amplitude * c * c;
        } else if constexpr (std::is_same_v<V, GaussianWindow>) {
          if (std::abs(t) > v.half_width) return 0.0;
          return v.amplitude * std::exp(-0.5 * t * t / (v.sigma * v.sigma));
        } else {
          return std::abs(t) <= v.half_width ? v.amplitude : 0.0;
        }
      },
      w);
}

double window_ft(const CouplingWindow& w, double omega) {
  return std::visit(
      [omega](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) {
          return cos2_ft(v.duration, v.amplitude, omega);
        } else if constexpr (std::is_same_v<V, GaussianWindow>) {
          return gaussian_ft(v.sigma, v.amplitude, v.half_width, omega);
        } else {
          return 2.0 * v.amplitude * v.half_width * sinc(std::abs(omega) * v.half_width);
        }
      },
      w);
}

double window_half_width(const CouplingWindow& w) {
  return std::visit(
      [](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) return 0.5 * v.duration;
        else if constexpr (std::is_same_v<V, GaussianWindow>) return v.half_width;
        else return v.half_width;
      },
      w);
}

double window_amplitude(const CouplingWindow& w) {
  return std::visit([](const auto& v) { return v.amplitude; }, w);
}

CouplingWindow window_with_amplitude(const CouplingWindow& w, double amplitude) {
  CouplingWindow out = w;
  std::visit([amplitude](auto& v) { v.amplitude = amplitude; }, out);
  return out;
}

bool window_vanishes_at_edges(const CouplingWindow& w) {
  return std::holds_alternative<CosineSquaredWindow>(w);
}

std::string window_kind(const CouplingWindow& w) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) return "cos2";
        else if constexpr (std::is_same_v<V, GaussianWindow>) return "gaussian";
        else return "boxcar";
      },
      w);
}

// --- tail bounds --------------------------------------------------------
//
// cos^2 envelope: |eps~(nu)| <= (4/3) A b^2 / nu^3 for nu >= 2b.
// Gaussian: smooth part sqrt(2 pi) sigma A e^{-sigma^2 nu^2 / 2} plus a
// truncation-jump part <= J / nu with J = 4 A e^{-W^2 / 2 sigma^2}.

TailBound emission_tail_bound(const CouplingWindow& w, double omega_gap, double W) {
  const double nu0 = omega_gap + W;
  return std::visit(
      [&](const auto& v) -> TailBound {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) {
          const double b = 2.0 * kPi / v.duration;
          if (nu0 < 2.0 * b) return {kInf, 0.0};
          const double c = v.amplitude * b * b;
          return {(4.0 / 9.0) * c * c / std::pow(nu0, 4), 0.0};
        } else if constexpr (std::is_same_v<V, GaussianWindow>) {
          const double s2 = v.sigma * v.sigma;
          const double J = 4.0 * jump_height(v);
          const double gauss_sq = kPi * v.amplitude * v.amplitude * std::exp(-s2 * nu0 * nu0);
          const double cross = 2.0 * J * std::sqrt(2.0 * kPi) * v.sigma * v.amplitude *
                               std::exp(-0.5 * s2 * nu0 * nu0) / (s2 * nu0);
          return {gauss_sq + cross, 21.0 * J * J};
        } else {
          (void)v;
          return {kInf, 0.0};  // boxcar switching: UV-log-divergent emission
        }
      },
      w);
}

TailBound exchange_tail_bound(const CouplingWindow& w, double omega_gap, double W) {
  return std::visit(
      [&](const auto& v) -> TailBound {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) {
          const double b = 2.0 * kPi / v.duration;
          const double lo = W - omega_gap;
          if (lo < 2.0 * b) return {kInf, 0.0};
          const double c = v.amplitude * b * b;
          return {(8.0 / 9.0) * c * c / (std::pow(W + omega_gap, 3) * lo * lo), 0.0};
        } else if constexpr (std::is_same_v<V, GaussianWindow>) {
          const double s2 = v.sigma * v.sigma;
          const double lo = W - omega_gap;
          if (lo <= 0.0) return {kInf, 0.0};
          const double J = 4.0 * jump_height(v);
          const double g = std::sqrt(2.0 * kPi) * v.sigma * v.amplitude;
          const double gauss_part = g * (g * std::exp(-0.5 * s2 * (W + omega_gap) * (W + omega_gap)) +
                                         J / (W + omega_gap)) *
                                    std::exp(-0.5 * s2 * lo * lo) / (s2 * lo);
          return {gauss_part, 21.0 * J * J};
        } else {
          (void)v;
          return {kInf, 0.0};  // conditionally convergent only; not supported
        }
      },
      w);
}

TailBound overlap_tail_bound(const CouplingWindow& w, double omega_gap, double W) {
  const double nu0 = omega_gap + W;
  return std::visit(
      [&](const auto& v) -> TailBound {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, CosineSquaredWindow>) {
          const double b = 2.0 * kPi / v.duration;
          if (nu0 < 2.0 * b) return {kInf, 0.0};
          const double c = v.amplitude * b * b;
          return {(16.0 / 45.0) * c * c / std::pow(nu0, 5), 0.0};
        } else if constexpr (std::is_same_v<V, GaussianWindow>) {
          const double s2 = v.sigma * v.sigma;
          const double J = 4.0 * jump_height(v);
          const double gauss_sq = kPi * v.amplitude * v.amplitude *
                                  std::exp(-s2 * nu0 * nu0) / std::max(nu0, 1.0);
          const double cross = 2.0 * J * std::sqrt(2.0 * kPi) * v.sigma * v.amplitude *
                               std::exp(-0.5 * s2 * nu0 * nu0) / (s2 * nu0);
          return {gauss_sq + cross, J * J / nu0};
        } else {
          const double c = 2.0 * v.amplitude;
          return {c * c / nu0, 0.0};
        }
      },
      w);
}

}  // namespace vacprobe
