#include "vacprobe/amplitudes.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "vacprobe/quadrature.hpp"

namespace vacprobe {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

double safe_ratio(double num, double den) {
  if (den > 0.0) return std::min(num / den, 1e300);
  return num > 0.0 ? 1e300 : 0.0;
}

// Sum of |Lagrange weights| of the extrapolation to 0; quadrature noise on
// the ladder values is amplified by at most this factor.
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

struct Box {
  double p0, p1, q0, q1;
};

// Regularized double integral in rotated coordinates p (the kernel variable)
// and q, extrapolated along the regulator ladder. The rotation keeps the
// near-singular ridge of the kernel aligned with a quadrature axis.
template <class MakeIntegrand>
ComplexErr ladder_integral_2d(const MakeIntegrand& make, const Box& box,
                              const Regulator& reg, const QuadSettings& quad) {
  reg.validate();
  std::vector<double> ladder = reg.ladder;
  std::vector<Complex> values;
  values.reserve(ladder.size());
  double worst_quad_err = 0.0;
  for (double eps : ladder) {
    auto f = make(eps);
    auto res = quad::integrate_adaptive_2d<Complex>(f, box.p0, box.p1, box.q0, box.q1,
                                                    quad.abs_tol, quad.rel_tol,
                                                    quad.max_cells);
    if (!res.converged) {
      std::ostringstream msg;
      msg << "time-domain quadrature did not converge (cells=" << res.subdivisions
          << ", err=" << res.error << ")";
      throw NumericError(msg.str(), res.error,
                         std::max(quad.abs_tol, quad.rel_tol * std::abs(res.value)));
    }
    worst_quad_err = std::max(worst_quad_err, res.error);
    values.push_back(res.value);
  }
  auto [limit, ext_err] = quad::richardson<Complex>(ladder, values);
  ComplexErr out;
  out.value = limit;
  out.error = ext_err + extrapolation_amplification(ladder) * worst_quad_err;
  return out;
}

// Same-trajectory kernel D+(tau', tau) as a function of u = tau' - tau.
std::function<Complex(double, double)> same_kernel(const Trajectory& traj, double eps) {
  if (const auto* hyp = std::get_if<HyperbolicTrajectory>(&traj)) {
    const double L = hyp->scale;
    return [L, eps](double u, double) { return wightman_hyperbolic_same(u, L, eps); };
  }
  return [eps](double u, double) {
    return wightman_minkowski(u, Vec3{0.0, 0.0, 0.0}, eps);
  };
}

bool same_window(const CouplingWindow& a, const CouplingWindow& b) {
  if (window_kind(a) != window_kind(b)) return false;
  return window_amplitude(a) == window_amplitude(b) &&
         window_half_width(a) == window_half_width(b) &&
         window_ft(a, 1.0) == window_ft(b, 1.0);
}

void require_freq_route_pair(const PairConfig& pair, const char* where) {
  if (!is_inertial(pair.probe_a.trajectory) || !is_inertial(pair.probe_b.trajectory))
    throw std::invalid_argument(std::string(where) + ": inertial probes required");
  if (pair.probe_a.gap != pair.probe_b.gap)
    throw std::invalid_argument(std::string(where) + ": equal gaps required");
  if (!same_window(pair.probe_a.window, pair.probe_b.window))
    throw std::invalid_argument(std::string(where) + ": equal windows required");
  if (pair.probe_a.window_center != 0.0 || pair.probe_b.window_center != 0.0)
    throw std::invalid_argument(std::string(where) + ": centered windows required");
}

// Chunked semi-infinite quadrature with an analytic tail bound; the cutoff is
// grown until the reducible tail drops below freq_tail_rel of the accumulated
// value (or the explicit cutoff is honored).
ValueErr freq_integral(const std::function<double(double)>& g,
                       const std::function<TailBound(double)>& tail, double start,
                       double panel_hint, const QuadSettings& quad) {
  double value = 0.0, err = 0.0;
  auto integrate_chunk = [&](double a, double b) {
    std::vector<double> pts;
    const double step = std::max(panel_hint, (b - a) / 512.0);
    for (double x = a; x < b; x += step) pts.push_back(x);
    pts.push_back(b);
    auto res = quad::integrate_adaptive<double>(
        g, pts, std::max(quad.abs_tol, 0.25 * quad.rel_tol * std::abs(value)),
        quad.rel_tol, quad.max_intervals);
    value += res.value;
    err += res.error;
  };

  if (quad.omega_max > 0.0) {
    integrate_chunk(0.0, quad.omega_max);
    const TailBound tb = tail(quad.omega_max);
    if (!(tb.reducible <= std::max(quad.freq_tail_rel * std::abs(value), quad.abs_tol))) {
      throw NumericError("frequency-domain tail bound exceeds tolerance at the requested cutoff",
                         tb.reducible, quad.freq_tail_rel * std::abs(value));
    }
    err += tb.reducible + tb.irreducible;
    return {value, err};
  }

  double W = start;
  integrate_chunk(0.0, W);
  TailBound tb = tail(W);
  int doublings = 0;
  while (!(tb.reducible <= quad.freq_tail_rel * std::max(std::abs(value), 1e-300))) {
    if (++doublings > 40)
      throw NumericError("frequency-domain tail bound not attainable (boxcar-type switching?)",
                         tb.reducible, quad.freq_tail_rel * std::abs(value));
    integrate_chunk(W, 2.0 * W);
    W *= 2.0;
    tb = tail(W);
  }
  err += tb.reducible + tb.irreducible;
  return {value, err};
}

double freq_start_cutoff(const CouplingWindow& w, double gap) {
  return gap + 32.0 * kPi / window_duration(w);
}

double freq_panel_hint(const CouplingWindow& w, double osc_length) {
  const double lobe = 4.0 * kPi / window_duration(w);
  return std::min(lobe, osc_length);
}

}  // namespace

double AmplitudeSet::max_error() const {
  return std::max({err_emission_a, err_emission_b, err_exchange, err_overlap, err_x_norm});
}

PairConfig PairConfig::inertial(double gap, double separation, CouplingWindow window,
                                QuadSettings quad, bool allow_causal_contact) {
  PairConfig pc;
  pc.probe_a = ProbeParams{gap, make_inertial({-0.5 * separation, 0.0, 0.0}), window, 0.0};
  pc.probe_b = ProbeParams{gap, make_inertial({+0.5 * separation, 0.0, 0.0}), window, 0.0};
  pc.separation = separation;
  pc.quad = quad;
  pc.allow_causal_contact = allow_causal_contact;
  pc.regulator = Regulator::for_scale(std::min(window_duration(window), separation));
  pc.validate();
  return pc;
}

PairConfig PairConfig::hyperbolic(double gap, double separation, double tau_max,
                                  QuadSettings quad) {
  if (!(tau_max > 0.0))
    throw std::invalid_argument("PairConfig::hyperbolic: tau_max must be > 0");
  // Smooth switching over the truncation interval: a sharp boxcar would make
  // the emission probability UV-log-divergent.
  const CouplingWindow window = make_cos2(2.0 * tau_max);
  PairConfig pc;
  pc.probe_a = ProbeParams{gap, make_hyperbolic(Branch::Left, separation), window, 0.0};
  pc.probe_b = ProbeParams{gap, make_hyperbolic(Branch::Right, separation), window, 0.0};
  pc.separation = separation;
  pc.quad = quad;
  pc.regulator = Regulator::for_scale(std::min(2.0 * tau_max, separation));
  pc.validate();
  return pc;
}

void PairConfig::validate() const {
  if (!(probe_a.gap > 0.0) || !(probe_b.gap > 0.0))
    throw std::invalid_argument("PairConfig: gaps must be positive");
  if (!(separation > 0.0)) throw std::invalid_argument("PairConfig: separation must be positive");
  regulator.validate();

  const auto* ia = std::get_if<InertialTrajectory>(&probe_a.trajectory);
  const auto* ib = std::get_if<InertialTrajectory>(&probe_b.trajectory);
  const auto* ha = std::get_if<HyperbolicTrajectory>(&probe_a.trajectory);
  const auto* hb = std::get_if<HyperbolicTrajectory>(&probe_b.trajectory);
  if (ia && ib) {
    const Vec3 d{ia->position[0] - ib->position[0], ia->position[1] - ib->position[1],
                 ia->position[2] - ib->position[2]};
    if (std::abs(std::sqrt(norm_sq(d)) - separation) > 1e-9 * separation)
      throw std::invalid_argument("PairConfig: probe positions do not match separation");
  } else if (ha && hb) {
    if (ha->branch == hb->branch)
      throw std::invalid_argument("PairConfig: hyperbolic probes must ride opposite branches");
    if (std::abs(ha->scale - separation) > 1e-9 * separation ||
        std::abs(hb->scale - separation) > 1e-9 * separation)
      throw std::invalid_argument("PairConfig: hyperbolic scales must equal the separation");
  } else {
    throw std::invalid_argument("PairConfig: mixed trajectory kinds are not supported");
  }
  if (causal_contact() && !allow_causal_contact)
    throw std::invalid_argument(
        "PairConfig: probes are not causally disconnected "
        "(set allow_causal_contact to compute anyway)");
}

bool PairConfig::causal_contact() const {
  return !causally_disconnected(probe_a, probe_b);
}

ValueErr emission_time_domain(const ProbeParams& probe, const Regulator& reg,
                              const QuadSettings& quad) {
  const double h = window_half_width(probe.window);
  const double c = probe.window_center;
  const double gap = probe.gap;
  const CouplingWindow& win = probe.window;
  const Trajectory& traj = probe.trajectory;

  // u = tau' - tau carries the kernel ridge, v = tau' + tau the window sweep.
  const Box box{-2.0 * h, 2.0 * h, 2.0 * (c - h), 2.0 * (c + h)};
  auto make = [&](double eps) {
    auto kernel = same_kernel(traj, eps);
    return [&win, c, gap, kernel](double u, double v) -> Complex {
      const double tau = 0.5 * (v - u);
      const double tau_p = 0.5 * (v + u);
      const double w = window_value(win, tau - c) * window_value(win, tau_p - c);
      if (w == 0.0) return Complex(0.0, 0.0);
      return 0.5 * w * std::exp(Complex(0.0, -gap * u)) * kernel(u, v);
    };
  };
  const ComplexErr res = ladder_integral_2d(make, box, reg, quad);
  return {res.value.real(), res.error + std::abs(res.value.imag())};
}

ValueErr emission_freq_domain(const ProbeParams& probe, const QuadSettings& quad) {
  if (!is_inertial(probe.trajectory))
    throw std::invalid_argument("emission_freq_domain: inertial trajectory required");
  const CouplingWindow& w = probe.window;
  const double gap = probe.gap;
  auto g = [&w, gap](double om) {
    const double ft = window_ft(w, gap + om);
    return om * ft * ft / kFourPiSq;
  };
  auto tail = [&w, gap](double W) {
    TailBound tb = emission_tail_bound(w, gap, W);
    tb.reducible /= kFourPiSq;
    tb.irreducible /= kFourPiSq;
    return tb;
  };
  return freq_integral(g, tail, freq_start_cutoff(w, gap),
                       freq_panel_hint(w, std::numeric_limits<double>::infinity()), quad);
}

ComplexErr exchange_vac_time_domain(const PairConfig& pair) {
  pair.validate();
  const ProbeParams& pa = pair.probe_a;
  const ProbeParams& pb = pair.probe_b;
  const double ha = window_half_width(pa.window), ca = pa.window_center;
  const double hb = window_half_width(pb.window), cb = pb.window_center;
  const bool hyper = !is_inertial(pa.trajectory);
  const double L = pair.separation;

  // Kernel variable p: tau_A + tau_B between opposite hyperbolic branches,
  // tau_A - tau_B for static probes.
  Box box;
  if (hyper) {
    box = Box{ca + cb - ha - hb, ca + cb + ha + hb, ca - cb - ha - hb, ca - cb + ha + hb};
  } else {
    box = Box{ca - cb - ha - hb, ca - cb + ha + hb, ca + cb - ha - hb, ca + cb + ha + hb};
  }

  Vec3 dx{0.0, 0.0, 0.0};
  if (!hyper) {
    const auto& xa = std::get<InertialTrajectory>(pa.trajectory).position;
    const auto& xb = std::get<InertialTrajectory>(pb.trajectory).position;
    dx = {xa[0] - xb[0], xa[1] - xb[1], xa[2] - xb[2]};
  }

  auto make = [&](double eps) {
    return [&, eps](double p, double q) -> Complex {
      const double tau_a = 0.5 * (p + q);
      const double tau_b = hyper ? 0.5 * (p - q) : 0.5 * (q - p);
      const double w = window_value(pa.window, tau_a - ca) * window_value(pb.window, tau_b - cb);
      if (w == 0.0) return Complex(0.0, 0.0);
      const Complex kernel = hyper ? wightman_hyperbolic_cross(p, L, eps)
                                   : wightman_minkowski(p, dx, eps);
      return 0.5 * w * std::exp(Complex(0.0, pa.gap * tau_a + pb.gap * tau_b)) * kernel;
    };
  };
  return ladder_integral_2d(make, box, pair.regulator, pair.quad);
}

ValueErr exchange_vac_freq_domain(const PairConfig& pair) {
  pair.validate();
  require_freq_route_pair(pair, "exchange_vac_freq_domain");
  const CouplingWindow& w = pair.probe_a.window;
  const double gap = pair.probe_a.gap;
  const double L = pair.separation;
  auto g = [&w, gap, L](double om) {
    return std::sin(om * L) * window_ft(w, om - gap) * window_ft(w, om + gap) /
           (kFourPiSq * L);
  };
  auto tail = [&w, gap, L](double W) {
    TailBound tb = exchange_tail_bound(w, gap, W);
    tb.reducible /= kFourPiSq * L;
    tb.irreducible /= kFourPiSq * L;
    return tb;
  };
  return freq_integral(g, tail, freq_start_cutoff(w, gap), freq_panel_hint(w, kPi / L),
                       pair.quad);
}

ComplexErr emission_overlap(const PairConfig& pair) {
  pair.validate();
  const ProbeParams& pa = pair.probe_a;
  const ProbeParams& pb = pair.probe_b;
  const double ha = window_half_width(pa.window), ca = pa.window_center;
  const double hb = window_half_width(pb.window), cb = pb.window_center;
  const bool hyper = !is_inertial(pa.trajectory);
  const double L = pair.separation;

  Box box;
  if (hyper) {
    box = Box{ca + cb - ha - hb, ca + cb + ha + hb, ca - cb - ha - hb, ca - cb + ha + hb};
  } else {
    box = Box{ca - cb - ha - hb, ca - cb + ha + hb, ca + cb - ha - hb, ca + cb + ha + hb};
  }

  Vec3 dx_ba{0.0, 0.0, 0.0};
  if (!hyper) {
    const auto& xa = std::get<InertialTrajectory>(pa.trajectory).position;
    const auto& xb = std::get<InertialTrajectory>(pb.trajectory).position;
    dx_ba = {xb[0] - xa[0], xb[1] - xa[1], xb[2] - xa[2]};
  }

  auto make = [&](double eps) {
    return [&, eps](double p, double q) -> Complex {
      const double tau_a = 0.5 * (p + q);
      const double tau_b = hyper ? 0.5 * (p - q) : 0.5 * (q - p);
      const double w = window_value(pa.window, tau_a - ca) * window_value(pb.window, tau_b - cb);
      if (w == 0.0) return Complex(0.0, 0.0);
      const Complex kernel = hyper ? wightman_hyperbolic_cross(p, L, eps)
                                   : wightman_minkowski(-p, dx_ba, eps);
      return 0.5 * w * std::exp(Complex(0.0, pa.gap * tau_a - pb.gap * tau_b)) * kernel;
    };
  };
  return ladder_integral_2d(make, box, pair.regulator, pair.quad);
}

ValueErr emission_overlap_freq_domain(const PairConfig& pair) {
  pair.validate();
  require_freq_route_pair(pair, "emission_overlap_freq_domain");
  const CouplingWindow& w = pair.probe_a.window;
  const double gap = pair.probe_a.gap;
  const double L = pair.separation;
  auto g = [&w, gap, L](double om) {
    const double ft = window_ft(w, gap + om);
    return std::sin(om * L) * ft * ft / (kFourPiSq * L);
  };
  auto tail = [&w, gap, L](double W) {
    TailBound tb = overlap_tail_bound(w, gap, W);
    tb.reducible /= kFourPiSq * L;
    tb.irreducible /= kFourPiSq * L;
    return tb;
  };
  return freq_integral(g, tail, freq_start_cutoff(w, gap), freq_panel_hint(w, kPi / L),
                       pair.quad);
}

ValueErr x_norm_sq(const PairConfig& pair) {
  const AmplitudeSet amps = compute_amplitudes(pair, AmplitudeMethod::TimeDomain);
  return {amps.x_norm_sq, amps.err_x_norm};
}

namespace {

void fill_x_norm(AmplitudeSet& a) {
  const double x2 = std::norm(a.exchange_vac);
  const double o2 = std::norm(a.emission_overlap);
  a.x_norm_sq = a.emission_a * a.emission_b + x2 + o2;
  a.err_x_norm = a.emission_a * a.err_emission_b + a.emission_b * a.err_emission_a +
                 2.0 * std::abs(a.exchange_vac) * a.err_exchange +
                 2.0 * std::abs(a.emission_overlap) * a.err_overlap;
}

}  // namespace

AmplitudeSet compute_amplitudes(const PairConfig& pair, AmplitudeMethod method) {
  pair.validate();
  AmplitudeSet out;
  out.method = method;
  if (method == AmplitudeMethod::TimeDomain) {
    const ValueErr ea = emission_time_domain(pair.probe_a, pair.regulator, pair.quad);
    const ValueErr eb = emission_time_domain(pair.probe_b, pair.regulator, pair.quad);
    const ComplexErr ex = exchange_vac_time_domain(pair);
    const ComplexErr ov = emission_overlap(pair);
    out.emission_a = ea.value;
    out.err_emission_a = ea.error;
    out.emission_b = eb.value;
    out.err_emission_b = eb.error;
    out.exchange_vac = ex.value;
    out.err_exchange = ex.error;
    out.emission_overlap = ov.value;
    out.err_overlap = ov.error;
  } else {
    const ValueErr ea = emission_freq_domain(pair.probe_a, pair.quad);
    const ValueErr eb = emission_freq_domain(pair.probe_b, pair.quad);
    const ValueErr ex = exchange_vac_freq_domain(pair);
    const ValueErr ov = emission_overlap_freq_domain(pair);
    out.emission_a = ea.value;
    out.err_emission_a = ea.error;
    out.emission_b = eb.value;
    out.err_emission_b = eb.error;
    out.exchange_vac = Complex(ex.value, 0.0);
    out.err_exchange = ex.error;
    out.emission_overlap = Complex(ov.value, 0.0);
    out.err_overlap = ov.error;
  }
  fill_x_norm(out);
  return out;
}

Matrix4c assemble_density_raw(const AmplitudeSet& a) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = 1.0 - a.emission_a - a.emission_b - a.x_norm_sq;
  m(0, 1) = -std::conj(a.exchange_vac);
  m(1, 0) = -a.exchange_vac;
  m(1, 1) = a.x_norm_sq;
  m(2, 2) = a.emission_a;
  m(2, 3) = a.emission_overlap;
  m(3, 2) = std::conj(a.emission_overlap);
  m(3, 3) = a.emission_b;
  return m;
}

DensityMatrix4 assemble_density(const AmplitudeSet& amps) {
  const Matrix4c m = assemble_density_raw(amps);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("assemble_density: eigensolver failed", 0.0, 0.0);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    std::ostringstream msg;
    msg << "assemble_density: matrix indefinite (min eigenvalue " << min_eig
        << "); couplings too large for a second-order state";
    throw PerturbativeRegimeError(msg.str(), min_eig);
  }
  return DensityMatrix4::from_matrix(m);
}

EntanglementReport conditions_report(const AmplitudeSet& a) {
  EntanglementReport rep;
  const double x2 = std::norm(a.exchange_vac);
  const double ee = a.emission_a * a.emission_b;
  rep.ratio_exchange = safe_ratio(x2, ee);
  rep.cond_exchange = x2 > ee;
  const double o2 = std::norm(a.emission_overlap);
  rep.ratio_overlap = safe_ratio(o2, a.x_norm_sq);
  rep.cond_overlap = o2 > a.x_norm_sq;

  const Matrix4c pt = partial_transpose_raw(assemble_density_raw(a));
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(pt, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("conditions_report: eigensolver failed", 0.0, 0.0);
  rep.ppt_min_eigenvalue = es.eigenvalues().minCoeff();
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()[i] < 0.0) rep.negativity -= es.eigenvalues()[i];
  rep.entangled = rep.ppt_min_eigenvalue < -kEigTol;
  rep.condition_ppt_mismatch = (rep.cond_exchange || rep.cond_overlap) != rep.entangled;
  return rep;
}

}  // namespace vacprobe
