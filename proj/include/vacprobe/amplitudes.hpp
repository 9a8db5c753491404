#pragma once

// Second-order amplitudes of the probe pair: the emission probabilities
// |E_A|^2, |E_B|^2, the vacuum projection of the exchange amplitude
// <0|X_AB>, the emitted-quanta overlap <E_B|E_A> and the exchange-state norm
// |X_AB|^2, computed by two independent routes (regularized time-domain
// double quadrature, and a frequency-domain single quadrature for inertial
// probes), plus assembly of the reduced two-probe density matrix and the
// non-separability conditions.

#include <complex>
#include <string>

#include "vacprobe/correlators.hpp"
#include "vacprobe/qubit_pair.hpp"
#include "vacprobe/trajectories.hpp"

namespace vacprobe {

struct PerturbativeRegimeError : std::runtime_error {
  PerturbativeRegimeError(const std::string& what, double min_eig)
      : std::runtime_error(what), min_eigenvalue(min_eig) {}
  double min_eigenvalue = 0.0;
};

struct QuadSettings {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  std::size_t max_cells = std::size_t(1) << 14;  // 2D cells per regulator value
  std::size_t max_intervals = 8192;              // 1D subdivisions
  double omega_max = 0.0;                        // frequency cutoff; 0 = adaptive
  double freq_tail_rel = 1e-8;                   // reducible-tail target
};

struct PairConfig {
  ProbeParams probe_a;
  ProbeParams probe_b;
  double separation = 1.0;
  Regulator regulator;
  QuadSettings quad;
  // Opt-in for probes in causal contact (e.g. static probes closer than the
  // switching duration): the second-order integrals stay well defined, but
  // the evolution no longer factorizes between the probes, so the harvested
  // entanglement reading loses its locality argument.
  bool allow_causal_contact = false;

  // Probes at -L/2 and +L/2 on the x axis with a shared window and gap.
  static PairConfig inertial(double gap, double separation, CouplingWindow window,
                             QuadSettings quad = {}, bool allow_causal_contact = false);
  // Opposite hyperbolic branches of scale L, coupled smoothly over
  // [-tau_max, tau_max] in each probe's proper time.
  static PairConfig hyperbolic(double gap, double separation, double tau_max,
                               QuadSettings quad = {});

  bool asymmetric_gaps() const { return probe_a.gap != probe_b.gap; }
  bool causal_contact() const;
  void validate() const;
};

enum class AmplitudeMethod { TimeDomain, FrequencyDomain };

struct ValueErr {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexErr {
  std::complex<double> value{};
  double error = 0.0;
};

struct AmplitudeSet {
  double emission_a = 0.0;
  double emission_b = 0.0;
  std::complex<double> exchange_vac{};
  std::complex<double> emission_overlap{};
  double x_norm_sq = 0.0;
  AmplitudeMethod method = AmplitudeMethod::TimeDomain;
  double err_emission_a = 0.0;
  double err_emission_b = 0.0;
  double err_exchange = 0.0;
  double err_overlap = 0.0;
  double err_x_norm = 0.0;
  double max_error() const;
};

// |E|^2 = int dtau dtau' eps(tau) eps(tau') e^{-i Omega (tau'-tau)} D+(tau',tau),
// extrapolated along the regulator ladder. Works for both trajectory types;
// the residual imaginary part is folded into the error estimate.
ValueErr emission_time_domain(const ProbeParams& probe, const Regulator& reg,
                              const QuadSettings& quad = {});

// (1/4 pi^2) int_0^inf w dw |eps~(Omega + w)|^2; inertial probes only,
// independent of the separation.
ValueErr emission_freq_domain(const ProbeParams& probe, const QuadSettings& quad = {});

// <0|X_AB> = int dtau_A dtau_B eps_A eps_B e^{i(Om_A tau_A + Om_B tau_B)} D+(A,B).
ComplexErr exchange_vac_time_domain(const PairConfig& pair);

// (1/4 pi^2 L) int_0^inf dw sin(w L) eps~(w - Omega) eps~(w + Omega); inertial
// probes with equal centered windows and equal gaps.
ValueErr exchange_vac_freq_domain(const PairConfig& pair);

// <E_B|E_A> = int dtau_A dtau_B eps_A eps_B e^{i(Om_A tau_A - Om_B tau_B)} D+(B,A).
ComplexErr emission_overlap(const PairConfig& pair);

// (1/4 pi^2 L) int_0^inf dw sin(w L) eps~(Omega + w)^2, same preconditions as
// the exchange frequency route.
ValueErr emission_overlap_freq_domain(const PairConfig& pair);

// Full norm <X_AB|X_AB> of the exchange field state. Wick contraction of the
// four-operator vacuum expectation gives three pairings:
//   <X|X> = |E_A|^2 |E_B|^2  +  |<0|X_AB>|^2  +  |<E_B|E_A>|^2,
// i.e. the factorized two-emission piece, the doubly-contracted vacuum piece
// and the exchange-symmetrized overlap piece, so the quadruple integral
// reduces to products of the double integrals computed above.
ValueErr x_norm_sq(const PairConfig& pair);

AmplitudeSet compute_amplitudes(const PairConfig& pair,
                                AmplitudeMethod method = AmplitudeMethod::TimeDomain);

// Reduced two-probe density matrix in the {dd, uu, du, ud} basis:
//   [ 1 - |E_A|^2 - |E_B|^2 - |X|^2 , -<X_AB|0>   , 0          , 0          ]
//   [ -<0|X_AB>                     , |X_AB|^2    , 0          , 0          ]
//   [ 0                             , 0           , |E_A|^2    , <E_B|E_A>  ]
//   [ 0                             , 0           , <E_A|E_B>  , |E_B|^2    ]
// with the dd entry fixed by trace normalization.
Matrix4c assemble_density_raw(const AmplitudeSet& amps);

// Validated version; throws PerturbativeRegimeError when the matrix is
// indefinite beyond tolerance (couplings too large for second order).
DensityMatrix4 assemble_density(const AmplitudeSet& amps);

// Margin ratios and booleans of the two non-separability conditions, plus the
// numeric partial-transpose verdict on the assembled matrix.
EntanglementReport conditions_report(const AmplitudeSet& amps);

}  // namespace vacprobe
