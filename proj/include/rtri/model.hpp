// SPDX-License-Identifier: Apache-2.0
//
// System model: link dimensions and impairment level, time/energy resource
// split, orthogonal pilot construction, and randomized synthesis of the
// training-phase and data-phase received signals.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace rtri {

/// Dense complex double matrix; all signals, channels and estimators.
using ComplexMatrix = Eigen::MatrixXcd;

/// Link-level independent variables.
struct LinkConfig {
  int n_tx = 4;         ///< transmit antennas
  int n_rx = 4;         ///< receive antennas
  int coherence = 100;  ///< block length T in channel uses
  double delta = 0.0;   ///< residual transmit impairment level (equals EVM)
  double snr = 1.0;     ///< average SNR per receive antenna, linear

  /// Throws std::invalid_argument listing every violated bound.
  void validate() const;
};

/// A (T_p, T_d, rho_p, rho_d, alpha) tuple satisfying T = T_p + T_d and
/// rho T = rho_p T_p + rho_d T_d.
struct ResourceSplit {
  int t_p = 0;
  int t_d = 0;
  double rho_p = 0.0;
  double rho_d = 0.0;
  double alpha = 0.0;  ///< fraction of total energy spent on data
};

/// Deterministic random stream. Identical (seed, stream_id) reproduce the
/// same sample sequence; distinct stream_ids are statistically independent.
/// Gaussian variates use a fixed Box-Muller transform rather than
/// std::normal_distribution, whose algorithm is implementation-defined.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Independent stream derived from (this stream, index); used to give
  /// Monte-Carlo trial k its own substream so results do not depend on
  /// execution order or worker count.
  RandomSource substream(std::uint64_t index) const;

  /// Uniform on [0, 1).
  double uniform();

  /// Standard real Gaussian. Box-Muller pairs; the second value is cached.
  double gaussian();

  /// Circularly-symmetric complex Gaussian, unit variance: one fresh
  /// Box-Muller pair scaled by 1/sqrt(2). Does not touch the gaussian() cache.
  std::complex<double> complex_gaussian();

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Splits the block into pilot/data phases with data-energy fraction alpha:
/// rho_p = (1-alpha) snr T / t_p, rho_d = alpha snr T / (T - t_p).
ResourceSplit split_resources(const LinkConfig& config, int t_p, double alpha);

/// n_tx x t_p training matrix with S S^H = t_p I: the first n_tx rows of the
/// t_p-point unitary DFT matrix scaled by sqrt(t_p) (unit-modulus entries).
ComplexMatrix make_orthogonal_training(int n_tx, int t_p);

/// i.i.d. CN(0,1) matrix, filled row by row. Used for the channel H, the
/// receiver noise V, and the data symbols S_d, which share this law.
ComplexMatrix sample_cgaussian(int rows, int cols, RandomSource& rng);

/// Channel matrix H with i.i.d. CN(0,1) entries.
ComplexMatrix sample_channel(int n_rx, int n_tx, RandomSource& rng);

/// Transmit distortion with i.i.d. CN(0, delta^2) entries and temporally
/// independent columns. delta == 0 returns zeros without consuming draws.
ComplexMatrix sample_distortion(double delta, int n_tx, int n_cols, RandomSource& rng);

/// Training-phase received signal Y_p = sqrt(rho_p/N_t) H (S_p + D_p) + V_p,
/// drawing the distortion first and the noise second from `rng`.
ComplexMatrix training_rx(const ComplexMatrix& h, const ComplexMatrix& s_p, double rho_p,
                          double delta, RandomSource& rng);

/// Data-phase received signal Y_d = sqrt(rho_d/N_t) H (S_d + D_d) + V_d,
/// same draw order as training_rx.
ComplexMatrix data_rx(const ComplexMatrix& h, const ComplexMatrix& s_d, double rho_d,
                      double delta, RandomSource& rng);

}  // namespace rtri
