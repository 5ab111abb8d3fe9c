// SPDX-License-Identifier: Apache-2.0
//
// Experiment harness: sweeps that reproduce the reference figures as CSV
// files, a closed-form-vs-oracle validation battery, and run manifests for
// reproducibility. Identical spec and seed give byte-identical CSVs,
// independent of worker count.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtri/model.hpp"

namespace rtri {

enum class ExperimentKind {
  mse_sweep,      ///< normalized MSE vs training SNR, closed form and Monte Carlo
  optimal_tp,     ///< optimal training length vs SNR, jointly optimized power
  rate_sweep,     ///< achievable rate vs SNR at the optimized design
  rate_gain,      ///< relative rate gain of optimal T_p over T_p = N_t
  equal_power_tp, ///< optimal training length vs SNR under rho_p = rho_d
  validate,       ///< closed-form-vs-oracle property battery
};

const char* experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::validate;
  LinkConfig config;                        ///< dimensions; delta/snr overridden per grid point
  std::vector<double> snr_grid_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40};
  std::vector<double> delta_list = {0.0, 0.08, 0.175};
  int trials = 20000;
  std::uint64_t seed = 1;
  std::string output_path = ".";
  bool plot = false;   ///< also emit an SVG line plot (CSV stays the contract)
  int workers = 0;     ///< Monte-Carlo worker threads; 0 = hardware concurrency

  /// Throws std::invalid_argument listing every violation at once.
  void validate_spec() const;
};

/// rho = 10^(db/10).
double db_to_linear(double db);

/// Parses "start:step:stop" (inclusive stop, within half a step) into a grid.
std::vector<double> parse_snr_range(const std::string& text);

/// Reads an ExperimentSpec from a JSON file; absent fields keep defaults.
ExperimentSpec load_spec(const std::string& path);

/// Runs the experiment, writing <kind>.csv, <kind>.manifest.json and
/// optionally <kind>.svg under spec.output_path. Returns 0 on success;
/// the validate kind returns 1 when any property fails.
int run(const ExperimentSpec& spec);

}  // namespace rtri
