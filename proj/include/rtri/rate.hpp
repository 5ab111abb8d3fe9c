// SPDX-License-Identifier: Apache-2.0
//
// Effective SNR and approximated achievable rate: closed-form evaluation
// through the unordered Wishart eigenvalue density, plus a Monte-Carlo
// log-det oracle over Gaussian channel draws.

#pragma once

#include "rtri/model.hpp"

namespace rtri {

/// Effective SNR after estimation error, distortion and noise, linear scale.
struct EffectiveSnr {
  double value = 0.0;
};

enum class RateMethod { closed_form, monte_carlo };

/// Achievable-rate value in bits per channel use. std_err is zero exactly
/// when the value came from the closed form.
struct RateResult {
  double bits_per_use = 0.0;
  double std_err = 0.0;
  RateMethod method = RateMethod::closed_form;
};

/// rho_eff = rho_d rho_p T_p /
///   (N_t (1 + rho_p d^2)(1 + rho_d + rho_d d^2) + rho_p T_p + rho_d rho_p T_p d^2),
/// equal to rho_d sigma_est^2 / sigma_noise^2 with the training-gain variances.
EffectiveSnr effective_snr(double rho_p, double rho_d, int t_p, int n_tx, double delta);

/// Equal-power special case rho_p = rho_d = rho:
/// rho_eff = rho^2 T_p / (N_t (1 + rho d^2)(1 + rho + rho d^2) + (rho^2 d^2 + rho) T_p).
EffectiveSnr effective_snr_equal_power(double rho, int t_p, int n_tx, double delta);

/// Density of one unordered eigenvalue of the q x q complex Wishart matrix
/// built from a p x q (or q x p) standard Gaussian matrix:
///   p(l) = K sum_n sum_m (-1)^(n+m) l^(n+m+p-q-2) e^-l det(Omega).
/// The per-element q^(-1/(q-1)) factor of Omega aggregates to a single 1/q
/// across the (q-1)x(q-1) determinant; for q = 1 the determinant of the
/// empty matrix is 1 and the factor drops out.
double wishart_unordered_eig_pdf(double lambda, int p, int q);

/// Closed-form approximated achievable rate in bits per channel use:
///   (q K T_d)/(ln2 T) sum_n sum_m (-1)^(n+m) det(Omega) Gamma(t)
///     e^(N_t/rho_eff) sum_k Gamma(-t+k, N_t/rho_eff) / (rho_eff/N_t)^(t-k)
/// with t = n+m+p-q-1. The e^x Gamma(-t+k, x) products are evaluated in
/// scaled form and the alternating outer sum in signed-log form; a
/// cancellation condition above 1e6 raises a numerical-instability error.
RateResult closed_form_rate(EffectiveSnr rho_eff, int n_tx, int n_rx, int t_d, int coherence);

/// Monte-Carlo rate oracle: sample mean and standard error of
/// (T_d/T) log2 det(I + (rho_eff/N_t) H H^H) over fresh CN(0,1) channels.
/// Trial k uses rng.substream(k); results are worker-count independent.
RateResult mc_rate(EffectiveSnr rho_eff, int n_tx, int n_rx, int t_d, int coherence, int trials,
                   const RandomSource& rng, int workers = 0);

}  // namespace rtri
