#include "vacprobe/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace vacprobe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CouplingWindow build_window(const std::string& kind, double duration, double amplitude = 1.0) {
  if (kind == "cos2") return make_cos2(duration, amplitude);
  if (kind == "gaussian") return make_gaussian(duration / 10.0, amplitude, duration / 2.0);
  if (kind == "boxcar") return make_boxcar(duration / 2.0, amplitude);
  throw std::invalid_argument("unknown window kind: " + kind);
}

Regulator build_regulator(const NumericSettings& num, double scale) {
  Regulator r;
  r.ladder.clear();
  for (double rel : num.eps_ladder_rel) r.ladder.push_back(rel * scale);
  r.epsilon = r.ladder.front();
  r.validate();
  return r;
}

double hyperbolic_tau_max(double omega, double L) { return std::max(6.0 / omega, 3.0 * L); }

struct RowParams {
  double omega = 0.0, L = 0.0, T = 0.0, x = 0.0;
};

SweepRow compute_row(const SweepSpec& spec, const RowParams& p) {
  SweepRow row;
  row.scenario = scenario_name(spec.scenario);
  try {
    if (spec.scenario == Scenario::Werner) {
      row.omega = p.x;  // the mixing weight rides in the omega column
      const DensityMatrix4 rho = werner_state(WernerParam{p.x});
      const EntanglementReport rep = ppt_verdict(rho);
      row.ppt_min_eig = rep.ppt_min_eigenvalue;
      row.negativity = rep.negativity;
      row.entangled = rep.entangled ? 1 : 0;
      return row;
    }

    row.omega = p.omega;
    row.L = p.L;
    AmplitudeSet amps;
    if (spec.scenario == Scenario::Accelerated) {
      const double tau_max = hyperbolic_tau_max(p.omega, p.L);
      row.T = 2.0 * tau_max;
      PairConfig pc = PairConfig::hyperbolic(p.omega, p.L, tau_max, spec.numeric.quad);
      pc.regulator = build_regulator(spec.numeric,
                                     std::min(window_duration(pc.probe_a.window), p.L));
      amps = compute_amplitudes(pc, AmplitudeMethod::TimeDomain);
    } else {
      row.T = p.T;
      const CouplingWindow window = build_window(spec.numeric.window, p.T);
      const bool allow_contact = true;  // rows below L = T are flagged, not dropped
      PairConfig pc = PairConfig::inertial(p.omega, p.L, window, spec.numeric.quad,
                                           allow_contact);
      pc.regulator =
          build_regulator(spec.numeric, std::min(window_duration(window), p.L));
      const bool freq = spec.numeric.route != "time";
      amps = compute_amplitudes(
          pc, freq ? AmplitudeMethod::FrequencyDomain : AmplitudeMethod::TimeDomain);
    }

    const EntanglementReport rep = conditions_report(amps);
    row.emission_a = amps.emission_a;
    row.emission_b = amps.emission_b;
    row.exchange_abs = std::abs(amps.exchange_vac);
    row.exchange_phase = std::arg(amps.exchange_vac);
    row.overlap_abs = std::abs(amps.emission_overlap);
    row.x_norm_sq = amps.x_norm_sq;
    row.ratio12 = rep.ratio_exchange;
    row.ratio13 = rep.ratio_overlap;
    row.ppt_min_eig = rep.ppt_min_eigenvalue;
    row.negativity = rep.negativity;
    row.entangled = rep.entangled ? 1 : 0;
    row.err_max = amps.max_error();
    const double denom = std::sqrt(amps.emission_a * amps.emission_b);
    row.x_over_e2 = denom > 0.0 ? row.exchange_abs / denom : 0.0;
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
    row.err_max = kInf;
    row.emission_a = row.emission_b = row.exchange_abs = row.exchange_phase = kNan;
    row.overlap_abs = row.x_norm_sq = row.ratio12 = row.ratio13 = kNan;
    row.ppt_min_eig = row.negativity = kNan;
    row.entangled = 0;
  }
  return row;
}

void append_row(std::string& out, const SweepRow& r) {
  out += r.scenario;
  for (double v : {r.omega, r.L, r.T, r.emission_a, r.emission_b, r.exchange_abs,
                   r.exchange_phase, r.overlap_abs, r.x_norm_sq, r.ratio12, r.ratio13,
                   r.ppt_min_eig, r.negativity}) {
    out += ',';
    out += fmt17(v);
  }
  out += ',';
  out += std::to_string(r.entangled);
  out += ',';
  out += fmt17(r.err_max);
  out += '\n';
}

nlohmann::ordered_json row_to_json(const SweepRow& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["omega"] = r.omega;
  j["L"] = r.L;
  j["T"] = r.T;
  j["emission_A"] = r.emission_a;
  j["emission_B"] = r.emission_b;
  j["exchange_abs"] = r.exchange_abs;
  j["exchange_phase"] = r.exchange_phase;
  j["overlap_abs"] = r.overlap_abs;
  j["x_norm_sq"] = r.x_norm_sq;
  j["ratio12"] = r.ratio12;
  j["ratio13"] = r.ratio13;
  j["ppt_min_eig"] = r.ppt_min_eig;
  j["negativity"] = r.negativity;
  j["entangled"] = r.entangled != 0;
  j["err_max"] = r.err_max;
  j["x_over_e2"] = r.x_over_e2;
  if (r.failed) j["error"] = r.error;
  return j;
}

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Figure1: return "figure1";
    case Scenario::Figure2: return "figure2";
    case Scenario::Accelerated: return "accelerated";
    case Scenario::Werner: return "werner";
    case Scenario::Custom: return "custom";
  }
  return "custom";
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "figure1") return Scenario::Figure1;
  if (name == "figure2") return Scenario::Figure2;
  if (name == "accelerated") return Scenario::Accelerated;
  if (name == "werner") return Scenario::Werner;
  if (name == "custom") return Scenario::Custom;
  throw std::invalid_argument("unknown scenario: " + name);
}

SweepSpec SweepSpec::figure1() {
  SweepSpec s;
  s.scenario = Scenario::Figure1;
  s.omega_grid = GridAxis{2.0, 16.0, 141};
  s.L = 1.0;
  s.T = 1.0;
  s.out_path = "fig1.csv";
  s.numeric.route = "frequency";
  return s;
}

SweepSpec SweepSpec::figure2() {
  SweepSpec s;
  s.scenario = Scenario::Figure2;
  s.L_grid = GridAxis{0.6, 2.0, 71};
  s.omega = 9.5;
  s.T = 1.0;
  s.out_path = "fig2.csv";
  s.numeric.route = "frequency";
  return s;
}

SweepSpec SweepSpec::accelerated() {
  SweepSpec s;
  s.scenario = Scenario::Accelerated;
  s.omega_grid = GridAxis{0.5, 2.0, 3};
  s.L_grid = GridAxis{0.5, 2.0, 3};
  s.out_path = "accelerated.csv";
  s.numeric.route = "time";
  return s;
}

SweepSpec SweepSpec::werner() {
  SweepSpec s;
  s.scenario = Scenario::Werner;
  s.x_grid = GridAxis{0.0, 1.0, 101};
  s.out_path = "werner.csv";
  return s;
}

void SweepSpec::validate() const {
  auto check_axis = [](const std::optional<GridAxis>& g, const char* name) {
    if (!g) return;
    if (g->steps < 2) throw std::invalid_argument(std::string("grid ") + name + ": steps must be >= 2");
    if (!(g->min < g->max))
      throw std::invalid_argument(std::string("grid ") + name + ": min must be < max");
  };
  check_axis(omega_grid, "omega");
  check_axis(L_grid, "L");
  check_axis(T_grid, "T");
  check_axis(x_grid, "x");
  if (scenario == Scenario::Werner) {
    if (!x_grid) throw std::invalid_argument("werner scenario requires an x grid");
  } else if (x_grid) {
    throw std::invalid_argument("x grid is only valid for the werner scenario");
  }
  if (!omega_grid && !L_grid && !T_grid && !x_grid)
    throw std::invalid_argument("sweep requires at least one swept parameter");
  if (numeric.route != "auto" && numeric.route != "frequency" && numeric.route != "time")
    throw std::invalid_argument("route must be auto, frequency or time");
  build_window(numeric.window, 1.0);  // validates the kind
}

std::size_t SweepSpec::row_count() const {
  std::size_t n = 1;
  if (x_grid) return x_grid->steps;
  if (omega_grid) n *= omega_grid->steps;
  if (L_grid) n *= L_grid->steps;
  if (T_grid) n *= T_grid->steps;
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* cap = std::getenv("VACPROBE_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) threads = std::min<std::size_t>(threads, static_cast<std::size_t>(v));
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();

  std::vector<RowParams> params;
  if (spec.scenario == Scenario::Werner) {
    for (int i = 0; i < spec.x_grid->steps; ++i)
      params.push_back(RowParams{0, 0, 0, spec.x_grid->at(i)});
  } else {
    const GridAxis omega_axis = spec.omega_grid.value_or(GridAxis{spec.omega, spec.omega, 1});
    const GridAxis l_axis = spec.L_grid.value_or(GridAxis{spec.L, spec.L, 1});
    const GridAxis t_axis = spec.T_grid.value_or(GridAxis{spec.T, spec.T, 1});
    auto axis_value = [](const GridAxis& g, int i) { return g.steps < 2 ? g.min : g.at(i); };
    for (int io = 0; io < omega_axis.steps; ++io)
      for (int il = 0; il < l_axis.steps; ++il)
        for (int it = 0; it < t_axis.steps; ++it)
          params.push_back(RowParams{axis_value(omega_axis, io), axis_value(l_axis, il),
                                     axis_value(t_axis, it), 0});
  }

  SweepResult result;
  result.rows.resize(params.size());
  parallel_for(params.size(),
               [&](std::size_t i) { result.rows[i] = compute_row(spec, params[i]); });
  for (const auto& r : result.rows)
    if (r.failed) ++result.failed_rows;

  const nlohmann::ordered_json config = spec_to_json(spec);
  nlohmann::ordered_json manifest;
  manifest["config"] = config;
  manifest["csv_header"] = kCsvHeader;
  manifest["rows"] = result.rows.size();
  manifest["failed_rows"] = result.failed_rows;
  manifest["tol_eig"] = spec.numeric.tol_eig;
  manifest["psd_tol"] = kPsdTol;
  char hash[24];
  std::snprintf(hash, sizeof(hash), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  manifest["config_hash"] = hash;
  result.manifest = manifest;
  result.run_failed = result.failed_rows * 10 > result.rows.size();
  return result;
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) append_row(out, r);
  return out;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  f << rows_to_csv(rows);
  if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

nlohmann::ordered_json spec_to_json(const SweepSpec& spec) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario_name(spec.scenario);
  nlohmann::ordered_json grid;
  auto put_axis = [&grid](const char* name, const std::optional<GridAxis>& g) {
    if (!g) return;
    grid[name] = {{"min", g->min}, {"max", g->max}, {"steps", g->steps}};
  };
  put_axis("omega", spec.omega_grid);
  put_axis("L", spec.L_grid);
  put_axis("T", spec.T_grid);
  put_axis("x", spec.x_grid);
  j["grid"] = grid;
  j["fixed"] = {{"omega", spec.omega}, {"L", spec.L}, {"T", spec.T}};
  j["out"] = spec.out_path;
  nlohmann::ordered_json num;
  num["route"] = spec.numeric.route;
  num["window"] = spec.numeric.window;
  num["rel_tol"] = spec.numeric.quad.rel_tol;
  num["abs_tol"] = spec.numeric.quad.abs_tol;
  num["max_cells"] = spec.numeric.quad.max_cells;
  num["max_intervals"] = spec.numeric.quad.max_intervals;
  num["omega_max"] = spec.numeric.quad.omega_max;
  num["freq_tail_rel"] = spec.numeric.quad.freq_tail_rel;
  num["eps_ladder"] = spec.numeric.eps_ladder_rel;
  num["tol_eig"] = spec.numeric.tol_eig;
  j["numeric"] = num;
  return j;
}

SweepSpec spec_from_json(const nlohmann::json& j) {
  SweepSpec spec;
  spec.scenario = scenario_from_name(j.value("scenario", std::string("custom")));
  switch (spec.scenario) {
    case Scenario::Figure1: spec = SweepSpec::figure1(); break;
    case Scenario::Figure2: spec = SweepSpec::figure2(); break;
    case Scenario::Accelerated: spec = SweepSpec::accelerated(); break;
    case Scenario::Werner: spec = SweepSpec::werner(); break;
    case Scenario::Custom: break;
  }
  if (j.contains("grid")) {
    const auto& grid = j.at("grid");
    auto get_axis = [&grid](const char* name) -> std::optional<GridAxis> {
      if (!grid.contains(name)) return std::nullopt;
      const auto& g = grid.at(name);
      return GridAxis{g.at("min").get<double>(), g.at("max").get<double>(),
                      g.at("steps").get<int>()};
    };
    if (auto a = get_axis("omega")) spec.omega_grid = a;
    if (auto a = get_axis("L")) spec.L_grid = a;
    if (auto a = get_axis("T")) spec.T_grid = a;
    if (auto a = get_axis("x")) spec.x_grid = a;
  }
  if (j.contains("fixed")) {
    const auto& f = j.at("fixed");
    spec.omega = f.value("omega", spec.omega);
    spec.L = f.value("L", spec.L);
    spec.T = f.value("T", spec.T);
  }
  spec.out_path = j.value("out", spec.out_path.empty() ? "sweep.csv" : spec.out_path);
  if (j.contains("numeric")) {
    const auto& n = j.at("numeric");
    spec.numeric.route = n.value("route", spec.numeric.route);
    spec.numeric.window = n.value("window", spec.numeric.window);
    spec.numeric.quad.rel_tol = n.value("rel_tol", spec.numeric.quad.rel_tol);
    spec.numeric.quad.abs_tol = n.value("abs_tol", spec.numeric.quad.abs_tol);
    spec.numeric.quad.max_cells = n.value("max_cells", spec.numeric.quad.max_cells);
    spec.numeric.quad.max_intervals =
        n.value("max_intervals", spec.numeric.quad.max_intervals);
    spec.numeric.quad.omega_max = n.value("omega_max", spec.numeric.quad.omega_max);
    spec.numeric.quad.freq_tail_rel =
        n.value("freq_tail_rel", spec.numeric.quad.freq_tail_rel);
    if (n.contains("eps_ladder"))
      spec.numeric.eps_ladder_rel = n.at("eps_ladder").get<std::vector<double>>();
    spec.numeric.tol_eig = n.value("tol_eig", spec.numeric.tol_eig);
  }
  spec.validate();
  return spec;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

nlohmann::ordered_json pair_report(const SweepSpec& spec, bool hyperbolic,
                                   double tau_max) {
  SweepSpec one = spec;
  one.scenario = hyperbolic ? Scenario::Accelerated : Scenario::Custom;
  RowParams p{spec.omega, spec.L, spec.T, 0.0};
  SweepRow row;
  if (hyperbolic && tau_max > 0.0) {
    // Explicit switching half-width instead of the default rule.
    row.scenario = "accelerated";
    try {
      PairConfig pc = PairConfig::hyperbolic(spec.omega, spec.L, tau_max,
                                             spec.numeric.quad);
      pc.regulator = build_regulator(spec.numeric,
                                     std::min(window_duration(pc.probe_a.window), spec.L));
      const AmplitudeSet amps = compute_amplitudes(pc, AmplitudeMethod::TimeDomain);
      const EntanglementReport rep = conditions_report(amps);
      row.omega = spec.omega;
      row.L = spec.L;
      row.T = 2.0 * tau_max;
      row.emission_a = amps.emission_a;
      row.emission_b = amps.emission_b;
      row.exchange_abs = std::abs(amps.exchange_vac);
      row.exchange_phase = std::arg(amps.exchange_vac);
      row.overlap_abs = std::abs(amps.emission_overlap);
      row.x_norm_sq = amps.x_norm_sq;
      row.ratio12 = rep.ratio_exchange;
      row.ratio13 = rep.ratio_overlap;
      row.ppt_min_eig = rep.ppt_min_eigenvalue;
      row.negativity = rep.negativity;
      row.entangled = rep.entangled ? 1 : 0;
      row.err_max = amps.max_error();
      const double denom = std::sqrt(amps.emission_a * amps.emission_b);
      row.x_over_e2 = denom > 0.0 ? row.exchange_abs / denom : 0.0;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      row.err_max = kInf;
    }
  } else {
    row = compute_row(one, p);
  }
  nlohmann::ordered_json j = row_to_json(row);
  j["config"] = spec_to_json(one);
  return j;
}

}  // namespace vacprobe
