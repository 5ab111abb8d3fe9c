// SPDX-License-Identifier: Apache-2.0

#include "rtri/optimize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtri {

double optimal_alpha(double rho, int coherence, int t_p, int n_tx, double delta) {
  if (!(rho > 0.0)) throw std::invalid_argument("optimal_alpha: rho must be > 0");
  if (t_p < n_tx || t_p > coherence - 1) {
    throw std::invalid_argument("optimal_alpha: t_p must lie in [n_tx, coherence - 1]");
  }
  const int t_d = coherence - t_p;
  const double d2 = delta * delta;
  const double energy = rho * coherence;
  const double r = energy + n_tx * energy * d2 / t_p + n_tx;
  const double s = energy + n_tx * energy * d2 / t_p - n_tx * energy * (1.0 + d2) / t_d;
  if (std::abs(s) < 1e-12 * r) return 0.5;
  // (r - sqrt(r^2 - r s))/s == 1/(1 + sqrt(1 - s/r)); s < r always since
  // r - s = N_t + N_t rho T (1 + d^2)/T_d > 0.
  return 1.0 / (1.0 + std::sqrt(1.0 - s / r));
}

double alpha_high_snr_limit(int t_p, int t_d, int n_tx, double delta) {
  if (t_p < 1 || t_d < 1 || n_tx < 1) {
    throw std::invalid_argument("alpha_high_snr_limit: dimensions must be >= 1");
  }
  const double d2 = delta * delta;
  const double a = 1.0 + n_tx * d2 / t_p;
  const double b = n_tx * (1.0 + d2) / t_d;
  return 1.0 / (1.0 + std::sqrt(b / a));
}

TrainingDesign optimize_training_length(const LinkConfig& config, PowerMode mode,
                                        std::vector<double>* rate_scan) {
  config.validate();
  if (rate_scan) rate_scan->clear();

  TrainingDesign best;
  best.mode = mode;
  bool have_best = false;
  for (int t_p = config.n_tx; t_p <= config.coherence - 1; ++t_p) {
    const int t_d = config.coherence - t_p;
    double alpha;
    EffectiveSnr snr_eff;
    if (mode == PowerMode::joint_power) {
      alpha = optimal_alpha(config.snr, config.coherence, t_p, config.n_tx, config.delta);
      const ResourceSplit split = split_resources(config, t_p, alpha);
      snr_eff = effective_snr(split.rho_p, split.rho_d, t_p, config.n_tx, config.delta);
    } else {
      alpha = static_cast<double>(t_d) / config.coherence;
      snr_eff = effective_snr_equal_power(config.snr, t_p, config.n_tx, config.delta);
    }
    RateResult rate;
    try {
      rate = closed_form_rate(snr_eff, config.n_tx, config.n_rx, t_d, config.coherence);
    } catch (const std::runtime_error& e) {
      std::ostringstream msg;
      msg << "optimize_training_length: rate evaluation failed at t_p = " << t_p << ": "
          << e.what();
      throw std::runtime_error(msg.str());
    }
    if (rate_scan) rate_scan->push_back(rate.bits_per_use);
    if (!have_best || rate.bits_per_use > best.rate.bits_per_use) {
      best.t_p = t_p;
      best.alpha = alpha;
      best.rate = rate;
      have_best = true;
    }
  }
  return best;
}

double relative_rate_gain(const LinkConfig& config, double rho) {
  LinkConfig cfg = config;
  cfg.snr = rho;
  cfg.validate();
  const TrainingDesign best = optimize_training_length(cfg, PowerMode::joint_power);

  const int t_p = cfg.n_tx;
  const double alpha = optimal_alpha(cfg.snr, cfg.coherence, t_p, cfg.n_tx, cfg.delta);
  const ResourceSplit split = split_resources(cfg, t_p, alpha);
  const EffectiveSnr snr_eff = effective_snr(split.rho_p, split.rho_d, t_p, cfg.n_tx, cfg.delta);
  const RateResult baseline =
      closed_form_rate(snr_eff, cfg.n_tx, cfg.n_rx, cfg.coherence - t_p, cfg.coherence);

  return (best.rate.bits_per_use - baseline.bits_per_use) / baseline.bits_per_use * 100.0;
}

}  // namespace rtri
