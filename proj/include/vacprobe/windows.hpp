#pragma once

// Switching profiles eps(t) for the probe-field coupling. All families are
// real, even and compactly supported; transforms use the convention
// eps~(omega) = integral eps(t) e^{i omega t} dt, which is real and even
// here.

#include <string>
#include <variant>

namespace vacprobe {

struct CosineSquaredWindow {
  double duration = 1.0;  // support [-duration/2, duration/2]
  double amplitude = 1.0;
};

struct GaussianWindow {
  double sigma = 1.0;
  double amplitude = 1.0;
  double half_width = 5.0;  // hard truncation of the support
};

struct BoxcarWindow {
  double half_width = 1.0;
  double amplitude = 1.0;
};

using CouplingWindow =
    std::variant<CosineSquaredWindow, GaussianWindow, BoxcarWindow>;

CouplingWindow make_cos2(double duration, double amplitude = 1.0);
// half_width <= 0 selects the default truncation at 5 sigma.
CouplingWindow make_gaussian(double sigma, double amplitude = 1.0,
                             double half_width = 0.0);
CouplingWindow make_boxcar(double half_width, double amplitude = 1.0);

double window_value(const CouplingWindow& w, double t);
double window_ft(const CouplingWindow& w, double omega);
double window_half_width(const CouplingWindow& w);
double window_amplitude(const CouplingWindow& w);
CouplingWindow window_with_amplitude(const CouplingWindow& w, double amplitude);
std::string window_kind(const CouplingWindow& w);

inline double window_duration(const CouplingWindow& w) {
  return 2.0 * window_half_width(w);
}

// True when the profile is exactly zero at the support endpoints (cos^2);
// such probes do not couple at the very edge of the switching interval, so
// lightlike grazing of the two window corners is harmless.
bool window_vanishes_at_edges(const CouplingWindow& w);

// Tail bounds beyond a frequency cutoff W for the three second-order
// integrals. `reducible` shrinks as W grows and drives the adaptive cutoff;
// `irreducible` is the floor contributed by a discontinuous switch-on (the
// truncation jump of a Gaussian window) and is reported as part of the error
// estimate instead. A boxcar window makes the emission integral UV-log
// divergent, signalled by an infinite reducible bound.
struct TailBound {
  double reducible = 0.0;
  double irreducible = 0.0;
};

TailBound emission_tail_bound(const CouplingWindow& w, double omega_gap, double W);
TailBound exchange_tail_bound(const CouplingWindow& w, double omega_gap, double W);
TailBound overlap_tail_bound(const CouplingWindow& w, double omega_gap, double W);

}  // namespace vacprobe
