#include "vacprobe/accelerated.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vacprobe/quadrature.hpp"

namespace vacprobe {

namespace {
constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

void require_positive(double omega, double L) {
  if (!(omega > 0.0) || !(L > 0.0))
    throw std::invalid_argument("accelerated: omega and L must be positive");
}

double extrapolation_amplification(const std::vector<double>& h) {
  double amp = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    double w = 1.0;
    for (std::size_t j = 0; j < h.size(); ++j)
      if (j != k) w *= h[j] / (h[j] - h[k]);
    amp += std::abs(w);
  }
  return amp;
}
}  // namespace

PoleSeries make_pole_series(PoleKind kind, double omega, double L, int n_max) {
  require_positive(omega, L);
  if (n_max < 1) throw std::invalid_argument("make_pole_series: n_max must be >= 1");
  PoleSeries s;
  s.kind = kind;
  const double r = std::exp(-kPi * omega * L);
  if (kind == PoleKind::Emission) {
    for (int n = 1; n <= n_max; ++n) s.terms.emplace_back(n, std::pow(r, n));
    s.geometric_limit = r / (1.0 - r);
  } else {
    for (int n = 0; n < n_max; ++n)
      s.terms.emplace_back(n, std::exp(-kPi * (n + 0.5) * omega * L));
    s.geometric_limit = std::exp(-0.5 * kPi * omega * L) / (1.0 - r);
  }
  for (const auto& [n, t] : s.terms) s.partial_sum += t;
  return s;
}

double ratio_closed_form(double omega, double L) {
  require_positive(omega, L);
  return std::exp(0.5 * kPi * omega * L);
}

double ratio_series(double omega, double L, int n_max) {
  const PoleSeries num = make_pole_series(PoleKind::Exchange, omega, L, n_max);
  const PoleSeries den = make_pole_series(PoleKind::Emission, omega, L, n_max);
  if (den.partial_sum == 0.0) {
    // Sums underflowed (huge Omega L); the quotient is still the closed form.
    return ratio_closed_form(omega, L);
  }
  return num.partial_sum / den.partial_sum;
}

ValueErr emission_rate_hyperbolic(double omega, double L, double u_max,
                                  const Regulator& reg, const QuadSettings& quad) {
  require_positive(omega, L);
  reg.validate();
  std::vector<Complex> values;
  double worst = 0.0;
  for (double eps : reg.ladder) {
    auto f = [omega, L, eps](double u) {
      return std::exp(Complex(0.0, -omega * u)) * wightman_hyperbolic_same(u, L, eps);
    };
    // Pre-split around the regularized double pole at u = 0.
    std::vector<double> pts{-u_max, -8.0 * eps, 8.0 * eps, u_max};
    if (u_max <= 8.0 * eps) pts = {-u_max, 0.0, u_max};
    auto res = quad::integrate_adaptive<Complex>(f, pts, quad.abs_tol, quad.rel_tol,
                                                 quad.max_intervals);
    if (!res.converged)
      throw NumericError("emission_rate_hyperbolic: quadrature did not converge", res.error,
                         quad.rel_tol * std::abs(res.value));
    worst = std::max(worst, res.error);
    values.push_back(res.value);
  }
  auto [limit, ext_err] = quad::richardson<Complex>(reg.ladder, values);
  return {limit.real(),
          ext_err + extrapolation_amplification(reg.ladder) * worst + std::abs(limit.imag())};
}

ValueErr exchange_rate_hyperbolic(double omega, double L, double u_max,
                                  const QuadSettings& quad) {
  require_positive(omega, L);
  auto f = [omega, L](double u) {
    return std::exp(Complex(0.0, omega * u)) * wightman_hyperbolic_cross(u, L, 0.0);
  };
  auto res = quad::integrate_adaptive<Complex>(f, -u_max, u_max, quad.abs_tol, quad.rel_tol,
                                               quad.max_intervals);
  if (!res.converged)
    throw NumericError("exchange_rate_hyperbolic: quadrature did not converge", res.error,
                       quad.rel_tol * std::abs(res.value));
  return {res.value.real(), res.error + std::abs(res.value.imag())};
}

RatioCheck ratio_numeric_check(double omega, double L, double tau_max,
                               const QuadSettings& quad) {
  require_positive(omega, L);
  if (!(tau_max > 0.0))
    throw std::invalid_argument("ratio_numeric_check: tau_max must be positive");
  RatioCheck out;
  out.short_window_warning = tau_max * omega < 3.0;
  const double u_max = 2.0 * tau_max;
  const Regulator reg = Regulator::for_scale(std::min(L, 1.0 / omega));
  const ValueErr em = emission_rate_hyperbolic(omega, L, u_max, reg, quad);
  const ValueErr ex = exchange_rate_hyperbolic(omega, L, u_max, quad);
  if (!(em.value > 0.0))
    throw NumericError("ratio_numeric_check: emission rate not positive", em.error, 0.0);
  out.ratio = std::abs(ex.value) / em.value;
  out.reference = ratio_closed_form(omega, L);
  out.rel_err = std::abs(out.ratio - out.reference) / out.reference;
  return out;
}

}  // namespace vacprobe
