// SPDX-License-Identifier: Apache-2.0

#include "rtri/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rtri {

namespace {

// SplitMix64 finalizer; mixes stream indices into well-separated stream ids.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexMatrix phase_rx(const ComplexMatrix& h, const ComplexMatrix& s, double rho, double delta,
                       RandomSource& rng, const char* phase) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument(std::string(phase) + ": phase SNR must be > 0, got " + std::to_string(rho));
  }
  const auto n_rx = h.rows();
  const auto n_tx = h.cols();
  if (s.rows() != n_tx) {
    std::ostringstream msg;
    msg << phase << ": symbol matrix has " << s.rows() << " rows but the channel has " << n_tx
        << " transmit dimensions";
    throw std::invalid_argument(msg.str());
  }
  ComplexMatrix distortion =
      sample_distortion(delta, static_cast<int>(n_tx), static_cast<int>(s.cols()), rng);
  ComplexMatrix noise = sample_cgaussian(static_cast<int>(n_rx), static_cast<int>(s.cols()), rng);
  const double scale = std::sqrt(rho / static_cast<double>(n_tx));
  return scale * h * (s + distortion) + noise;
}

}  // namespace

void LinkConfig::validate() const {
  std::ostringstream msg;
  if (n_tx < 1) msg << "n_tx must be >= 1 (got " << n_tx << "); ";
  if (n_rx < 1) msg << "n_rx must be >= 1 (got " << n_rx << "); ";
  if (n_tx >= 1 && coherence < n_tx + 1) {
    msg << "coherence must be >= n_tx + 1 = " << n_tx + 1 << " (got " << coherence << "); ";
  }
  if (!(delta >= 0.0)) msg << "delta must be >= 0 (got " << delta << "); ";
  if (!(snr > 0.0)) msg << "snr must be > 0 (got " << snr << "); ";
  std::string text = msg.str();
  if (!text.empty()) throw std::invalid_argument("LinkConfig: " + text);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // seed_seq generation and mt19937_64 output are fully specified by the
  // standard, so the stream is identical across platforms.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  gen_.seed(seq);
}

RandomSource RandomSource::substream(std::uint64_t index) const {
  return RandomSource(seed_, mix64(stream_id_ ^ mix64(index + 1)));
}

double RandomSource::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RandomSource::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(angle);
  has_cached_ = true;
  return r * std::cos(angle);
}

std::complex<double> RandomSource::complex_gaussian() {
  const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));  // -2 log(u) scaled by 1/sqrt(2)
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

ResourceSplit split_resources(const LinkConfig& config, int t_p, double alpha) {
  config.validate();
  if (t_p < config.n_tx) {
    throw std::invalid_argument("split_resources: t_p = " + std::to_string(t_p) +
                                " violates t_p >= n_tx = " + std::to_string(config.n_tx));
  }
  if (t_p > config.coherence - 1) {
    throw std::invalid_argument("split_resources: t_p = " + std::to_string(t_p) +
                                " violates t_p <= coherence - 1 = " +
                                std::to_string(config.coherence - 1));
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("split_resources: alpha = " + std::to_string(alpha) +
                                " violates 0 < alpha < 1");
  }
  ResourceSplit split;
  split.t_p = t_p;
  split.t_d = config.coherence - t_p;
  const double total_energy = config.snr * config.coherence;
  split.rho_p = (1.0 - alpha) * total_energy / t_p;
  split.rho_d = alpha * total_energy / split.t_d;
  split.alpha = alpha;
  return split;
}

ComplexMatrix make_orthogonal_training(int n_tx, int t_p) {
  if (n_tx < 1 || t_p < n_tx) {
    throw std::invalid_argument("make_orthogonal_training: need 1 <= n_tx <= t_p, got n_tx = " +
                                std::to_string(n_tx) + ", t_p = " + std::to_string(t_p));
  }
  ComplexMatrix s(n_tx, t_p);
  const double step = -2.0 * std::numbers::pi / t_p;
  for (int row = 0; row < n_tx; ++row) {
    for (int col = 0; col < t_p; ++col) {
      const double phase = step * row * col;
      s(row, col) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return s;
}

ComplexMatrix sample_cgaussian(int rows, int cols, RandomSource& rng) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("sample_cgaussian: dimensions must be >= 1");
  }
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.complex_gaussian();
  }
  return m;
}

ComplexMatrix sample_channel(int n_rx, int n_tx, RandomSource& rng) {
  return sample_cgaussian(n_rx, n_tx, rng);
}

ComplexMatrix sample_distortion(double delta, int n_tx, int n_cols, RandomSource& rng) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("sample_distortion: delta must be >= 0, got " + std::to_string(delta));
  }
  if (delta == 0.0) return ComplexMatrix::Zero(n_tx, n_cols);
  return delta * sample_cgaussian(n_tx, n_cols, rng);
}

ComplexMatrix training_rx(const ComplexMatrix& h, const ComplexMatrix& s_p, double rho_p,
                          double delta, RandomSource& rng) {
  return phase_rx(h, s_p, rho_p, delta, rng, "training_rx");
}

ComplexMatrix data_rx(const ComplexMatrix& h, const ComplexMatrix& s_d, double rho_d, double delta,
                      RandomSource& rng) {
  return phase_rx(h, s_d, rho_d, delta, rng, "data_rx");
}

}  // namespace rtri
