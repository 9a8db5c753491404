#pragma once

// Parameter sweeps, CSV/JSON persistence and the command line driver.
// Sweeps are deterministic: rows are laid out in row-major grid order
// (omega, then L, then T), each row is a pure function of the spec, and
// floats are printed with round-trip precision, so identical specs produce
// byte-identical files no matter how many worker threads run.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vacprobe/accelerated.hpp"
#include "vacprobe/amplitudes.hpp"

namespace vacprobe {

enum class Scenario { Figure1, Figure2, Accelerated, Werner, Custom };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
  double at(int i) const { return min + (max - min) * i / (steps - 1); }
};

struct NumericSettings {
  QuadSettings quad;
  std::vector<double> eps_ladder_rel{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  double tol_eig = kEigTol;
  std::string route = "auto";    // auto | frequency | time
  std::string window = "cos2";   // cos2 | gaussian | boxcar
};

struct SweepSpec {
  Scenario scenario = Scenario::Custom;
  std::optional<GridAxis> omega_grid;
  std::optional<GridAxis> L_grid;
  std::optional<GridAxis> T_grid;
  std::optional<GridAxis> x_grid;  // Werner mixing weight
  double omega = 9.5;
  double L = 1.0;
  double T = 1.0;
  std::string out_path;
  NumericSettings numeric;

  static SweepSpec figure1();
  static SweepSpec figure2();
  static SweepSpec accelerated();
  static SweepSpec werner();
  void validate() const;
  std::size_t row_count() const;
};

struct SweepRow {
  std::string scenario;
  double omega = 0.0;  // carries the Werner x for the werner scenario
  double L = 0.0;
  double T = 0.0;
  double emission_a = 0.0;
  double emission_b = 0.0;
  double exchange_abs = 0.0;
  double exchange_phase = 0.0;
  double overlap_abs = 0.0;
  double x_norm_sq = 0.0;
  double ratio12 = 0.0;
  double ratio13 = 0.0;
  double ppt_min_eig = 0.0;
  double negativity = 0.0;
  int entangled = 0;
  double err_max = 0.0;  // infinity marks a failed row
  // Not part of the CSV schema:
  double x_over_e2 = 0.0;
  bool failed = false;
  std::string error;
};

inline constexpr const char* kCsvHeader =
    "scenario,omega,L,T,emission_A,emission_B,exchange_abs,exchange_phase,"
    "overlap_abs,x_norm_sq,ratio12,ratio13,ppt_min_eig,negativity,entangled,err_max";

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t failed_rows = 0;
  bool run_failed = false;  // more than 10% of the rows failed
  nlohmann::ordered_json manifest;
};

SweepResult run_sweep(const SweepSpec& spec);

std::string rows_to_csv(const std::vector<SweepRow>& rows);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);

nlohmann::ordered_json spec_to_json(const SweepSpec& spec);
SweepSpec spec_from_json(const nlohmann::json& j);

std::uint64_t fnv1a64(const std::string& data);

// Single full report for the `pair` subcommand; keys match the SweepRow
// fields plus a `config` echo.
nlohmann::ordered_json pair_report(const SweepSpec& spec, bool hyperbolic,
                                   double tau_max);

// Worker pool over [0, n); thread count from VACPROBE_THREADS (default: all
// cores). Results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

int cli_main(int argc, const char* const* argv);

}  // namespace vacprobe
