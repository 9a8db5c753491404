#pragma once

// Adaptive quadrature engines used throughout: a 1D Gauss-Kronrod 7/15
// integrator with interval bisection, a 2D tensor-product version with
// per-axis (anisotropic) refinement for integrands that are sharp along
// one coordinate only, fixed-order Gauss-Legendre panels for smooth
// oracle-style integrals, and Richardson extrapolation in a regulator
// parameter.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace vacprobe {

struct NumericError : std::runtime_error {
  NumericError(const std::string& what, double achieved, double requested)
      : std::runtime_error(what), achieved_error(achieved), requested_tol(requested) {}
  double achieved_error = 0.0;
  double requested_tol = 0.0;
};

namespace quad {

// Gauss-Kronrod 7/15 nodes on [-1,1], ascending; Gauss nodes sit at the odd
// indices 1,3,...,13.
inline constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.0,                0.207784955007898,
     0.405845151377397,  0.586087235467691,  0.741531185599394,
     0.864864423359769,  0.949107912342759,  0.991455371120813};

inline constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

inline constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

// 16-point Gauss-Legendre half-nodes/weights (positive half, symmetric rule).
inline constexpr double kGL16Nodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double kGL16Weights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  bool converged = false;
  std::size_t subdivisions = 0;
};

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

// Single Gauss-Kronrod 7/15 panel; returns the K15 value and |K15-G7|.
template <class T, class F>
std::pair<T, double> gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T k{};
  T g{};
  for (int i = 0; i < 15; ++i) {
    const T fi = f(mid + h * kKronrodNodes[i]);
    k += kKronrodWeights[i] * fi;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * fi;
  }
  k *= h;
  g *= h;
  return {k, detail::magnitude(k - g)};
}

// Adaptive 1D integration over the union of the given breakpoint panels.
// Extra breakpoints let callers pre-split oscillatory ranges.
template <class T, class F>
Result<T> integrate_adaptive(const F& f, const std::vector<double>& breakpoints,
                             double abs_tol, double rel_tol,
                             std::size_t max_intervals = 4096) {
  struct Interval {
    double a, b;
    T value;
    double error;
    std::size_t id;
  };
  auto worse = [](const Interval& x, const Interval& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.id > y.id;  // deterministic tie-break
  };
  std::priority_queue<Interval, std::vector<Interval>, decltype(worse)> heap(worse);

  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_adaptive: need at least one panel");
  T total{};
  double total_err = 0.0;
  std::size_t next_id = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    auto [v, e] = gk15<T>(f, breakpoints[i], breakpoints[i + 1]);
    heap.push({breakpoints[i], breakpoints[i + 1], v, e, next_id++});
    total += v;
    total_err += e;
  }

  std::size_t n = breakpoints.size() - 1;
  while (total_err > std::max(abs_tol, rel_tol * detail::magnitude(total)) &&
         n < max_intervals) {
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // cannot split further
      heap.push(worst);
      break;
    }
    auto [vl, el] = gk15<T>(f, worst.a, mid);
    auto [vr, er] = gk15<T>(f, mid, worst.b);
    total += vl + vr - worst.value;
    total_err += el + er - worst.error;
    heap.push({worst.a, mid, vl, el, next_id++});
    heap.push({mid, worst.b, vr, er, next_id++});
    ++n;
  }

  Result<T> out;
  out.value = total;
  out.error = total_err;
  out.subdivisions = n;
  out.converged = total_err <= std::max(abs_tol, rel_tol * detail::magnitude(total));
  return out;
}

template <class T, class F>
Result<T> integrate_adaptive(const F& f, double a, double b, double abs_tol,
                             double rel_tol, std::size_t max_intervals = 4096) {
  return integrate_adaptive<T>(f, std::vector<double>{a, b}, abs_tol, rel_tol, max_intervals);
}

// 2D tensor GK with anisotropic refinement: the worst cell is bisected along
// the axis whose embedded (Gauss vs Kronrod) defect is larger, so a ridge
// aligned with one axis is resolved with thin strips instead of a full
// quadtree. Integrands with a diagonal ridge should be rotated by the caller
// first.
template <class T, class F>
Result<T> integrate_adaptive_2d(const F& f, double ax, double bx, double ay,
                                double by, double abs_tol, double rel_tol,
                                std::size_t max_cells = (1u << 14)) {
  struct Cell {
    double ax, bx, ay, by;
    T value;
    double error, err_x, err_y;
    std::size_t id;
  };
  auto eval = [&f](double ax_, double bx_, double ay_, double by_) {
    const double mx = 0.5 * (ax_ + bx_), hx = 0.5 * (bx_ - ax_);
    const double my = 0.5 * (ay_ + by_), hy = 0.5 * (by_ - ay_);
    T fy_k[15];
    T fy_g[15];
    for (int j = 0; j < 15; ++j) {
      const double y = my + hy * kKronrodNodes[j];
      T row_k{};
      T row_g{};
      for (int i = 0; i < 15; ++i) {
        const T v = f(mx + hx * kKronrodNodes[i], y);
        row_k += kKronrodWeights[i] * v;
        if (i % 2 == 1) row_g += kGaussWeights[i / 2] * v;
      }
      fy_k[j] = row_k;
      fy_g[j] = row_g;
    }
    T kk{}, gk_{}, kg{}, gg{};
    for (int j = 0; j < 15; ++j) {
      kk += kKronrodWeights[j] * fy_k[j];
      gk_ += kKronrodWeights[j] * fy_g[j];
      if (j % 2 == 1) {
        kg += kGaussWeights[j / 2] * fy_k[j];
        gg += kGaussWeights[j / 2] * fy_g[j];
      }
    }
    const double scale = hx * hy;
    kk *= scale;
    gk_ *= scale;
    kg *= scale;
    gg *= scale;
    Cell c{ax_, bx_, ay_, by_, kk, detail::magnitude(kk - gg),
           detail::magnitude(kk - gk_), detail::magnitude(kk - kg), 0};
    return c;
  };

  auto worse = [](const Cell& x, const Cell& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.id > y.id;
  };
  std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> heap(worse);

  std::size_t next_id = 0;
  Cell root = eval(ax, bx, ay, by);
  root.id = next_id++;
  T total = root.value;
  double total_err = root.error;
  heap.push(root);
  std::size_t n = 1;

  while (total_err > std::max(abs_tol, rel_tol * detail::magnitude(total)) &&
         n < max_cells) {
    Cell worst = heap.top();
    heap.pop();
    bool split_x = worst.err_x > worst.err_y;
    if (worst.err_x == worst.err_y) split_x = (worst.bx - worst.ax) >= (worst.by - worst.ay);
    Cell c1, c2;
    if (split_x) {
      const double mx = 0.5 * (worst.ax + worst.bx);
      if (mx <= worst.ax || mx >= worst.bx) { heap.push(worst); break; }
      c1 = eval(worst.ax, mx, worst.ay, worst.by);
      c2 = eval(mx, worst.bx, worst.ay, worst.by);
    } else {
      const double my = 0.5 * (worst.ay + worst.by);
      if (my <= worst.ay || my >= worst.by) { heap.push(worst); break; }
      c1 = eval(worst.ax, worst.bx, worst.ay, my);
      c2 = eval(worst.ax, worst.bx, my, worst.by);
    }
    c1.id = next_id++;
    c2.id = next_id++;
    total += c1.value + c2.value - worst.value;
    total_err += c1.error + c2.error - worst.error;
    heap.push(c1);
    heap.push(c2);
    ++n;
  }

  Result<T> out;
  out.value = total;
  out.error = total_err;
  out.subdivisions = n;
  out.converged = total_err <= std::max(abs_tol, rel_tol * detail::magnitude(total));
  return out;
}

// Composite fixed-order Gauss-Legendre; panel length should resolve the
// fastest oscillation. Used by closed-form-free oracles and the truncated
// Gaussian transform tail.
template <class T, class F>
T gauss_legendre_panels(const F& f, double a, double b, double max_panel) {
  if (!(max_panel > 0)) throw std::invalid_argument("gauss_legendre_panels: bad panel size");
  const int npanels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
  const double h = (b - a) / npanels;
  T total{};
  for (int p = 0; p < npanels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 8; ++i) {
      total += kGL16Weights[i] * (f(mid + 0.5 * h * kGL16Nodes[i]) +
                                  f(mid - 0.5 * h * kGL16Nodes[i]));
    }
  }
  return total * (0.5 * h);
}

// Polynomial (Neville) extrapolation of samples (h_i, y_i) to h = 0.
// h must be strictly decreasing and positive; returns limit and a
// last-correction error estimate.
template <class T>
std::pair<T, double> richardson(const std::vector<double>& h, std::vector<T> y) {
  const std::size_t n = h.size();
  if (n == 0 || y.size() != n) throw std::invalid_argument("richardson: bad inputs");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(h[i] > h[i + 1]) || !(h[i + 1] > 0))
      throw std::invalid_argument("richardson: ladder must be strictly decreasing and positive");
  }
  if (n == 1) return {y[0], detail::magnitude(y[0]) * 1e-2};
  T second_last = y[0];
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      y[i] = (h[i] * y[i + 1] - h[i + k] * y[i]) / (h[i] - h[i + k]);
    }
    if (k == n - 2) second_last = y[0];
  }
  return {y[0], detail::magnitude(y[0] - second_last)};
}

}  // namespace quad
}  // namespace vacprobe
