#pragma once

// Closed-form results for the uniformly accelerated pair. Contour evaluation
// of the stationary kernels picks up pole ladders: emission poles at
// proper-time differences i pi n L (n >= 1), exchange poles at proper-time
// sums i pi (n + 1/2) L (n >= 0), so the exchange-to-emission ratio is the
// prefactor-free geometric quotient exp(pi Omega L / 2).

#include <vector>

#include "vacprobe/amplitudes.hpp"

namespace vacprobe {

enum class PoleKind { Emission, Exchange };

struct PoleSeries {
  PoleKind kind = PoleKind::Emission;
  std::vector<std::pair<int, double>> terms;  // (n, e^{-pi n Omega L} or e^{-pi (n+1/2) Omega L})
  double partial_sum = 0.0;
  double geometric_limit = 0.0;
};

PoleSeries make_pole_series(PoleKind kind, double omega, double L, int n_max);

// exp(pi Omega L / 2), the exact exchange-to-emission ratio.
double ratio_closed_form(double omega, double L);

// Quotient of the truncated pole sums, e^{-pi Omega L/2} sum_{n=0}^{N-1} r^n
// over sum_{n=1}^{N} r^n with r = e^{-pi Omega L}; the truncation cancels
// identically, so this equals ratio_closed_form for every N >= 1 up to
// rounding.
double ratio_series(double omega, double L, int n_max);

// Per-proper-time emission and exchange responses, as regularized 1D
// quadratures of the stationary kernels over |u| <= u_max with ladder
// extrapolation. These are the objects whose quotient the ratio law
// constrains; a windowed transition *probability* would add switching
// transients on top (see ratio_numeric_check).
ValueErr emission_rate_hyperbolic(double omega, double L, double u_max,
                                  const Regulator& reg, const QuadSettings& quad = {});
ValueErr exchange_rate_hyperbolic(double omega, double L, double u_max,
                                  const QuadSettings& quad = {});

struct RatioCheck {
  double ratio = 0.0;
  double reference = 0.0;
  double rel_err = 0.0;
  bool short_window_warning = false;  // tau_max * omega < 3
};

// Numeric exchange/emission ratio for probes switched on over
// [-tau_max, tau_max]: both amplitudes are evaluated in per-proper-time form
// with the correlation variable truncated to |u| <= 2 tau_max, where the
// duration factor common to numerator and denominator cancels. The sharp
// switching transients of a literal hard window would otherwise bury the
// exponentially small emission response under a UV-log-divergent term.
RatioCheck ratio_numeric_check(double omega, double L, double tau_max,
                               const QuadSettings& quad = {});

}  // namespace vacprobe
