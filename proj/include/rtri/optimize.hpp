// SPDX-License-Identifier: Apache-2.0
//
// Resource optimization: closed-form optimal power split between training
// and data, its high-SNR limit, exhaustive integer search for the optimal
// training length, and the relative rate gain over minimal-length training.

#pragma once

#include <vector>

#include "rtri/model.hpp"
#include "rtri/rate.hpp"

namespace rtri {

enum class PowerMode { joint_power, equal_power };

/// Winning training design of an exhaustive search over t_p.
struct TrainingDesign {
  int t_p = 0;
  double alpha = 0.0;  ///< in equal_power mode this is t_d/T, recorded for reporting
  RateResult rate;
  PowerMode mode = PowerMode::joint_power;
};

/// Closed-form data-power fraction maximizing the effective SNR:
///   alpha = (r - sqrt(r^2 - r s)) / s for s != 0, 1/2 for s = 0,
/// evaluated as 1/(1 + sqrt(1 - s/r)), which is the same expression without
/// the subtractive cancellation. |s| below 1e-12 r takes the s = 0 branch.
double optimal_alpha(double rho, int coherence, int t_p, int n_tx, double delta);

/// rho -> inf limit of optimal_alpha: 1/(1 + sqrt(b/a)) with
/// a = 1 + N_t delta^2/T_p and b = N_t (1 + delta^2)/T_d.
double alpha_high_snr_limit(int t_p, int t_d, int n_tx, double delta);

/// Exhaustive search over integer t_p in [n_tx, coherence - 1] maximizing the
/// closed-form rate; joint_power pairs each candidate with its optimal alpha,
/// equal_power uses rho_p = rho_d = snr. Ties break toward the smallest t_p.
/// When `rate_scan` is non-null it receives the per-candidate rates, indexed
/// from t_p = n_tx.
TrainingDesign optimize_training_length(const LinkConfig& config, PowerMode mode,
                                        std::vector<double>* rate_scan = nullptr);

/// Percentage rate improvement of the optimal training length over t_p = N_t
/// at total SNR `rho`, with jointly optimized power. Non-negative because the
/// search space contains the baseline.
double relative_rate_gain(const LinkConfig& config, double rho);

}  // namespace rtri
