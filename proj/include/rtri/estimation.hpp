// SPDX-License-Identifier: Apache-2.0
//
// LMMSE channel estimation under residual transmit impairments: the scaled
// LMMSE filter, its closed-form per-entry variances, the high-power error
// floor, and a Monte-Carlo MSE oracle.

#pragma once

#include "rtri/model.hpp"

namespace rtri {

/// Channel estimate with its closed-form per-entry second-order statistics.
/// est_var + err_var = 1 and est_var = gain/(1+gain) hold by construction.
struct ChannelEstimate {
  ComplexMatrix h_hat;   ///< N_r x N_t estimate
  double est_var = 0.0;  ///< per-entry variance of the estimate
  double err_var = 1.0;  ///< per-entry variance of the estimation error
  double gain = 0.0;     ///< training gain g
};

/// Mean and standard error of a Monte-Carlo estimate.
struct MonteCarloStats {
  double mean = 0.0;
  double std_err = 0.0;
};

/// Training gain g = rho_p T_p / (N_t (rho_p delta^2 + 1)).
double training_gain(double rho_p, int t_p, int n_tx, double delta);

/// Normalized per-entry MSE 1/(1 + g).
double normalized_mse(double gain);

/// rho_p -> inf limit of the normalized MSE, 1/(1 + T_p/(N_t delta^2)).
/// Defined only for delta > 0; the ideal-hardware floor is zero.
double mse_floor(int t_p, int n_tx, double delta);

/// LMMSE estimate of H from the training observation:
///   H_hat = sqrt(rho_p/N_t) Y_p ((rho_p/N_t) S_p^H S_p + (delta^2 rho_p + 1) I)^-1 S_p^H.
/// The per-entry variances come from the filter's second-order statistics and
/// reduce to the training-gain closed forms when S_p S_p^H = T_p I.
ChannelEstimate lmmse_estimate(const ComplexMatrix& y_p, const ComplexMatrix& s_p, double rho_p,
                               double delta);

/// Monte-Carlo normalized MSE: mean of |H - H_hat|_F^2 / (N_r N_t) over
/// `trials` fresh draws of (H, distortion, noise) with orthogonal pilots of
/// length t_p. Trial k uses rng.substream(k), so the result is independent
/// of worker count. workers = 0 picks the hardware concurrency.
MonteCarloStats empirical_mse(const LinkConfig& config, int t_p, double rho_p, int trials,
                              const RandomSource& rng, int workers = 0);

}  // namespace rtri
