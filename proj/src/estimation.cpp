// SPDX-License-Identifier: Apache-2.0

#include "rtri/estimation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel_trials.hpp"

namespace rtri {

double training_gain(double rho_p, int t_p, int n_tx, double delta) {
  return rho_p * t_p / (n_tx * (rho_p * delta * delta + 1.0));
}

double normalized_mse(double gain) {
  return 1.0 / (1.0 + gain);
}

double mse_floor(int t_p, int n_tx, double delta) {
  if (!(delta > 0.0)) {
    throw std::domain_error("mse_floor: defined only for delta > 0 (the ideal-hardware floor is 0)");
  }
  return 1.0 / (1.0 + t_p / (n_tx * delta * delta));
}

ChannelEstimate lmmse_estimate(const ComplexMatrix& y_p, const ComplexMatrix& s_p, double rho_p,
                               double delta) {
  const auto n_tx = s_p.rows();
  const auto t_p = s_p.cols();
  if (y_p.cols() != t_p) {
    throw std::invalid_argument("lmmse_estimate: y_p has " + std::to_string(y_p.cols()) +
                                " columns but s_p has " + std::to_string(t_p));
  }
  if (!(rho_p > 0.0)) {
    throw std::invalid_argument("lmmse_estimate: rho_p must be > 0, got " + std::to_string(rho_p));
  }

  const double c2 = rho_p / static_cast<double>(n_tx);
  const double beta = delta * delta * rho_p + 1.0;

  // Regularized Gram c^2 S^H S + beta I is Hermitian positive definite for
  // any rho_p > 0, so the Cholesky factorization cannot fail.
  ComplexMatrix gram = c2 * (s_p.adjoint() * s_p);
  gram.diagonal().array() += beta;
  Eigen::LLT<ComplexMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("lmmse_estimate: regularized Gram not positive definite");
  }
  ComplexMatrix filter = llt.solve(s_p.adjoint());  // T_p x N_t

  ChannelEstimate est;
  est.h_hat = std::sqrt(c2) * (y_p * filter);

  // Average per-entry estimate variance c^2 tr(S R^-1 S^H) / N_t; under the
  // orthogonal-pilot Gram condition this collapses to g/(1+g).
  est.est_var = c2 * (s_p * filter).trace().real() / static_cast<double>(n_tx);
  est.err_var = 1.0 - est.est_var;
  est.gain = est.est_var / est.err_var;
  return est;
}

MonteCarloStats empirical_mse(const LinkConfig& config, int t_p, double rho_p, int trials,
                              const RandomSource& rng, int workers) {
  config.validate();
  if (trials < 1) {
    throw std::invalid_argument("empirical_mse: trials must be >= 1, got " + std::to_string(trials));
  }
  const ComplexMatrix pilots = make_orthogonal_training(config.n_tx, t_p);
  const double denom = static_cast<double>(config.n_rx) * config.n_tx;
  const auto kernel = [&](int k) {
    RandomSource sub = rng.substream(static_cast<std::uint64_t>(k));
    const ComplexMatrix h = sample_channel(config.n_rx, config.n_tx, sub);
    const ComplexMatrix y = training_rx(h, pilots, rho_p, config.delta, sub);
    const ChannelEstimate est = lmmse_estimate(y, pilots, rho_p, config.delta);
    return (h - est.h_hat).squaredNorm() / denom;
  };
  return detail::reduce_stats(detail::run_trials(trials, workers, kernel));
}

}  // namespace rtri
