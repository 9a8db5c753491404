#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "vacprobe/sweep.hpp"

namespace vacprobe {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

int write_sweep_outputs(const SweepResult& result, const std::string& out_path) {
  emit_csv(result.rows, out_path);
  write_text(out_path + ".manifest.json", result.manifest.dump(2) + "\n");
  std::cerr << "wrote " << result.rows.size() << " rows to " << out_path;
  if (result.failed_rows > 0) std::cerr << " (" << result.failed_rows << " failed)";
  std::cerr << "\n";
  return result.run_failed ? kExitNumeric : kExitOk;
}

struct CommonOpts {
  double omega = 9.5;
  double L = 1.0;
  double T = 1.0;
  int steps = 0;
  std::string out;
  double tol = 0.0;
  std::vector<double> eps_ladder;
  std::string route;
  std::string window;
};

void apply_numeric(SweepSpec& spec, const CommonOpts& o) {
  if (o.tol > 0.0) spec.numeric.quad.rel_tol = o.tol;
  if (!o.eps_ladder.empty()) spec.numeric.eps_ladder_rel = o.eps_ladder;
  if (!o.route.empty()) spec.numeric.route = o.route;
  if (!o.window.empty()) spec.numeric.window = o.window;
  if (!o.out.empty()) spec.out_path = o.out;
}

void add_numeric_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tol", o.tol, "relative quadrature tolerance");
  cmd->add_option("--eps-ladder", o.eps_ladder,
                  "regulator ladder, decreasing, in units of the window duration")
      ->delimiter(',');
  cmd->add_option("--route", o.route, "integration route: auto|frequency|time");
  cmd->add_option("--window", o.window, "window family: cos2|gaussian|boxcar");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"vacprobe: vacuum entanglement extraction by a pair of switched probes"};
  app.require_subcommand(1);

  CommonOpts fig1, fig2, acc, wer, pair_o;
  std::string config_path;
  bool pair_hyperbolic = false;
  double pair_tau_max = 0.0;
  bool pair_allow_contact = false;

  auto* c_fig1 = app.add_subcommand("figure1", "ratio sweep over the gap at L = T");
  c_fig1->add_option("--out", fig1.out, "output CSV path");
  c_fig1->add_option("--steps", fig1.steps, "grid points");
  c_fig1->add_option("--L", fig1.L, "probe separation");
  c_fig1->add_option("--T", fig1.T, "window duration");
  add_numeric_flags(c_fig1, fig1);

  auto* c_fig2 = app.add_subcommand("figure2", "ratio sweep over the separation");
  c_fig2->add_option("--out", fig2.out, "output CSV path");
  c_fig2->add_option("--steps", fig2.steps, "grid points");
  c_fig2->add_option("--omega", fig2.omega, "energy gap");
  c_fig2->add_option("--T", fig2.T, "window duration");
  add_numeric_flags(c_fig2, fig2);

  GridAxis acc_omega_axis{0.5, 2.0, 3};
  GridAxis acc_l_axis{0.5, 2.0, 3};
  auto* c_acc = app.add_subcommand("accelerated",
                                   "uniformly accelerated pair: amplitudes and ratio law");
  c_acc->add_option("--out", acc.out, "output CSV path");
  c_acc->add_option("--omega-min", acc_omega_axis.min, "gap grid start");
  c_acc->add_option("--omega-max", acc_omega_axis.max, "gap grid end");
  c_acc->add_option("--omega-steps", acc_omega_axis.steps, "gap grid points");
  c_acc->add_option("--L-min", acc_l_axis.min, "separation grid start");
  c_acc->add_option("--L-max", acc_l_axis.max, "separation grid end");
  c_acc->add_option("--L-steps", acc_l_axis.steps, "separation grid points");
  add_numeric_flags(c_acc, acc);

  auto* c_wer = app.add_subcommand("werner", "Werner family sweep over the mixing weight");
  c_wer->add_option("--out", wer.out, "output CSV path");
  c_wer->add_option("--steps", wer.steps, "grid points");

  auto* c_pair = app.add_subcommand("pair", "single configuration, JSON report on stdout");
  c_pair->add_option("--omega", pair_o.omega, "energy gap");
  c_pair->add_option("--L", pair_o.L, "probe separation");
  c_pair->add_option("--T", pair_o.T, "window duration (inertial probes)");
  c_pair->add_option("--out", pair_o.out, "also write the JSON report here");
  c_pair->add_flag("--hyperbolic", pair_hyperbolic, "uniformly accelerated pair");
  c_pair->add_option("--tau-max", pair_tau_max,
                     "switching half-width for the hyperbolic pair (default max(6/omega, 3L))");
  c_pair->add_flag("--allow-causal-contact", pair_allow_contact,
                   "compute even when the probes are causally connected");
  add_numeric_flags(c_pair, pair_o);

  auto* c_sweep = app.add_subcommand("sweep", "run a sweep described by a JSON config");
  c_sweep->add_option("--config", config_path, "JSON config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_fig1->parsed()) {
      SweepSpec spec = SweepSpec::figure1();
      if (fig1.steps > 0) spec.omega_grid->steps = fig1.steps;
      spec.L = fig1.L;
      spec.T = fig1.T;
      apply_numeric(spec, fig1);
      return write_sweep_outputs(run_sweep(spec), spec.out_path);
    }
    if (c_fig2->parsed()) {
      SweepSpec spec = SweepSpec::figure2();
      if (fig2.steps > 0) spec.L_grid->steps = fig2.steps;
      spec.omega = fig2.omega;
      spec.T = fig2.T;
      apply_numeric(spec, fig2);
      return write_sweep_outputs(run_sweep(spec), spec.out_path);
    }
    if (c_acc->parsed()) {
      SweepSpec spec = SweepSpec::accelerated();
      spec.omega_grid = acc_omega_axis;
      spec.L_grid = acc_l_axis;
      apply_numeric(spec, acc);
      SweepResult result = run_sweep(spec);
      // Ratio-law diagnostics on the same grid.
      nlohmann::ordered_json diag = nlohmann::ordered_json::array();
      for (const auto& row : result.rows) {
        if (row.failed) continue;
        const double tau_max = std::max(6.0 / row.omega, 3.0 * row.L);
        const RatioCheck rc = ratio_numeric_check(row.omega, row.L, tau_max,
                                                  spec.numeric.quad);
        nlohmann::ordered_json d;
        d["omega"] = row.omega;
        d["L"] = row.L;
        d["tau_max"] = tau_max;
        d["ratio_numeric"] = rc.ratio;
        d["ratio_closed_form"] = rc.reference;
        d["ratio_series_n30"] = ratio_series(row.omega, row.L, 30);
        d["rel_err"] = rc.rel_err;
        d["short_window_warning"] = rc.short_window_warning;
        diag.push_back(d);
      }
      const int code = write_sweep_outputs(result, spec.out_path);
      write_text(spec.out_path + ".ratio.json", diag.dump(2) + "\n");
      return code;
    }
    if (c_wer->parsed()) {
      SweepSpec spec = SweepSpec::werner();
      if (wer.steps > 0) spec.x_grid->steps = wer.steps;
      if (!wer.out.empty()) spec.out_path = wer.out;
      return write_sweep_outputs(run_sweep(spec), spec.out_path);
    }
    if (c_pair->parsed()) {
      SweepSpec spec;
      spec.scenario = Scenario::Custom;
      spec.omega = pair_o.omega;
      spec.L = pair_o.L;
      spec.T = pair_o.T;
      apply_numeric(spec, pair_o);
      spec.out_path = "";
      if (!pair_hyperbolic && !pair_allow_contact) {
        const CouplingWindow w = spec.numeric.window == "gaussian"
                                     ? make_gaussian(pair_o.T / 10.0, 1.0, pair_o.T / 2.0)
                                 : spec.numeric.window == "boxcar"
                                     ? make_boxcar(pair_o.T / 2.0)
                                     : make_cos2(pair_o.T);
        ProbeParams a{pair_o.omega, make_inertial({-0.5 * pair_o.L, 0, 0}), w, 0.0};
        ProbeParams b{pair_o.omega, make_inertial({+0.5 * pair_o.L, 0, 0}), w, 0.0};
        if (!causally_disconnected(a, b)) {
          std::cerr << "error: probes are causally connected (T too long for L); "
                       "pass --allow-causal-contact to compute anyway\n";
          return kExitUsage;
        }
      }
      const double tau_max = pair_tau_max > 0.0
                                 ? pair_tau_max
                                 : std::max(6.0 / pair_o.omega, 3.0 * pair_o.L);
      const nlohmann::ordered_json report = pair_report(spec, pair_hyperbolic, tau_max);
      const std::string text = report.dump(2) + "\n";
      std::cout << text;
      if (!pair_o.out.empty()) write_text(pair_o.out, text);
      return report.contains("error") ? kExitNumeric : kExitOk;
    }
    if (c_sweep->parsed()) {
      std::ifstream f(config_path);
      if (!f) {
        std::cerr << "error: cannot open config " << config_path << "\n";
        return kExitUsage;
      }
      nlohmann::json j;
      try {
        f >> j;
      } catch (const std::exception& e) {
        std::cerr << "error: invalid JSON config: " << e.what() << "\n";
        return kExitUsage;
      }
      const SweepSpec spec = spec_from_json(j);
      return write_sweep_outputs(run_sweep(spec), spec.out_path);
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const PerturbativeRegimeError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace vacprobe
