// SPDX-License-Identifier: Apache-2.0

#include "rtri/rate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "parallel_trials.hpp"
#include "rtri/numerics.hpp"

namespace rtri {

namespace {

// Exact in double for the desk-scale arguments (k <= p + q - 2 <= 18).
double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void check_wishart_orders(int p, int q, const char* where) {
  if (q < 1 || q > p) {
    std::ostringstream msg;
    msg << where << ": need 1 <= q <= p, got q = " << q << ", p = " << p;
    throw std::domain_error(msg.str());
  }
}

// Three-case index rule for the (i, j)-th exponent of Omega (1-based).
int gamma_index(int i, int j, int n, int m) {
  if (i < n && j < m) return i + j - 2;
  if (i >= n && j >= m) return i + j;
  return i + j - 1;
}

// det(Omega) for the (n, m)-th summand: determinant of the factorial matrix
// times the aggregated scale 1/q. Empty matrix (q = 1) has determinant 1.
double omega_det(int p, int q, int n, int m) {
  if (q == 1) return 1.0;
  Eigen::MatrixXd mat(q - 1, q - 1);
  for (int i = 1; i <= q - 1; ++i) {
    for (int j = 1; j <= q - 1; ++j) {
      mat(i - 1, j - 1) = factorial(gamma_index(i, j, n, m) + p - q);
    }
  }
  return mat.determinant() / q;
}

double log_normalization(int p, int q) {
  double log_k = 0.0;
  for (int i = 1; i <= q; ++i) {
    log_k -= log_factorial(p - i);
    log_k -= log_factorial(q - i);
  }
  return log_k;
}

// e^x Gamma(-j, x) for j = 0 .. depth-1, one downward recurrence sweep.
std::vector<double> scaled_gamma_ladder(double x, int depth) {
  std::vector<double> g(static_cast<std::size_t>(depth));
  g[0] = exp_scaled_e1(x);
  double x_pow = 1.0 / x;  // x^(k-1) at k = 0
  for (int j = 1; j < depth; ++j) {
    g[static_cast<std::size_t>(j)] = (g[static_cast<std::size_t>(j - 1)] - x_pow) / (-j);
    x_pow /= x;
  }
  return g;
}

}  // namespace

EffectiveSnr effective_snr(double rho_p, double rho_d, int t_p, int n_tx, double delta) {
  if (!(rho_p > 0.0) || !(rho_d > 0.0)) {
    throw std::invalid_argument("effective_snr: phase SNRs must be > 0");
  }
  if (n_tx < 1 || t_p < n_tx) {
    throw std::invalid_argument("effective_snr: need t_p >= n_tx >= 1");
  }
  const double d2 = delta * delta;
  const double num = rho_d * rho_p * t_p;
  const double den = n_tx * (1.0 + rho_p * d2) * (1.0 + rho_d + rho_d * d2) + rho_p * t_p +
                     rho_d * rho_p * t_p * d2;
  return EffectiveSnr{num / den};
}

EffectiveSnr effective_snr_equal_power(double rho, int t_p, int n_tx, double delta) {
  if (!(rho > 0.0)) throw std::invalid_argument("effective_snr_equal_power: rho must be > 0");
  if (n_tx < 1 || t_p < n_tx) {
    throw std::invalid_argument("effective_snr_equal_power: need t_p >= n_tx >= 1");
  }
  const double d2 = delta * delta;
  const double num = rho * rho * t_p;
  const double den =
      n_tx * (1.0 + rho * d2) * (1.0 + rho + rho * d2) + (rho * rho * d2 + rho) * t_p;
  return EffectiveSnr{num / den};
}

double wishart_unordered_eig_pdf(double lambda, int p, int q) {
  check_wishart_orders(p, q, "wishart_unordered_eig_pdf");
  if (!(lambda >= 0.0)) {
    throw std::domain_error("wishart_unordered_eig_pdf: lambda must be >= 0");
  }
  const double log_k = log_normalization(p, q);

  if (lambda == 0.0) {
    // Only the (n, m) = (1, 1) summand has exponent p - q; it is nonzero at
    // the origin exactly when p = q.
    if (p != q) return 0.0;
    return std::exp(log_k) * omega_det(p, q, 1, 1);
  }

  const double log_lambda = std::log(lambda);
  std::vector<SignedLogValue> terms;
  terms.reserve(static_cast<std::size_t>(q) * q);
  for (int n = 1; n <= q; ++n) {
    for (int m = 1; m <= q; ++m) {
      const double det = omega_det(p, q, n, m);
      if (det == 0.0) continue;
      const int exponent = n + m + p - q - 2;
      const double log_mag = log_k + exponent * log_lambda - lambda + std::log(std::abs(det));
      const int sign = ((n + m) % 2 == 0 ? 1 : -1) * (det > 0.0 ? 1 : -1);
      terms.push_back(SignedLogValue::from_log(log_mag, sign));
    }
  }
  return signed_log_sum(terms).value.value();
}

RateResult closed_form_rate(EffectiveSnr rho_eff, int n_tx, int n_rx, int t_d, int coherence) {
  if (!(rho_eff.value > 0.0)) {
    throw std::domain_error("closed_form_rate: rho_eff must be > 0, got " +
                            std::to_string(rho_eff.value));
  }
  if (n_tx < 1 || n_rx < 1 || t_d < 1 || coherence <= t_d) {
    throw std::invalid_argument("closed_form_rate: need n_tx, n_rx >= 1 and 1 <= t_d < coherence");
  }
  const int q = std::min(n_rx, n_tx);
  const int p = std::max(n_rx, n_tx);
  const double x = n_tx / rho_eff.value;  // N_t / rho_eff
  const int t_max = 2 * q + p - q - 1;
  const std::vector<double> ladder = scaled_gamma_ladder(x, t_max);

  std::vector<SignedLogValue> terms;
  terms.reserve(static_cast<std::size_t>(q) * q);
  for (int n = 1; n <= q; ++n) {
    for (int m = 1; m <= q; ++m) {
      const double det = omega_det(p, q, n, m);
      if (det == 0.0) continue;
      const int t = n + m + p - q - 1;
      // sum_k Gamma(-t+k, x) / (1/x)^(t-k) = sum_{j=0}^{t-1} x^j e^-x ladder[j];
      // the e^x prefactor is already folded into the ladder values.
      double inner = 0.0;
      double x_pow = 1.0;
      for (int j = 0; j < t; ++j) {
        inner += x_pow * ladder[static_cast<std::size_t>(j)];
        x_pow *= x;
      }
      const double log_mag = log_factorial(t - 1) + std::log(inner) + std::log(std::abs(det));
      const int sign = ((n + m) % 2 == 0 ? 1 : -1) * (det > 0.0 ? 1 : -1);
      terms.push_back(SignedLogValue::from_log(log_mag, sign));
    }
  }

  const SignedLogSum sum = signed_log_sum(terms);
  if (!(sum.condition <= 1e6) || sum.value.sign <= 0) {
    std::ostringstream msg;
    msg << "closed_form_rate: alternating sum lost too much precision (condition = "
        << sum.condition << ") at p = " << p << ", q = " << q << ", rho_eff = " << rho_eff.value;
    throw std::runtime_error(msg.str());
  }

  const double log_rate = std::log(static_cast<double>(q)) + log_normalization(p, q) +
                          std::log(static_cast<double>(t_d)) -
                          std::log(std::numbers::ln2 * coherence) + sum.value.log_magnitude;
  return RateResult{std::exp(log_rate), 0.0, RateMethod::closed_form};
}

RateResult mc_rate(EffectiveSnr rho_eff, int n_tx, int n_rx, int t_d, int coherence, int trials,
                   const RandomSource& rng, int workers) {
  if (!(rho_eff.value >= 0.0)) {
    throw std::domain_error("mc_rate: rho_eff must be >= 0, got " + std::to_string(rho_eff.value));
  }
  if (n_tx < 1 || n_rx < 1 || t_d < 1 || coherence <= t_d) {
    throw std::invalid_argument("mc_rate: need n_tx, n_rx >= 1 and 1 <= t_d < coherence");
  }
  if (trials < 1) throw std::invalid_argument("mc_rate: trials must be >= 1");
  if (rho_eff.value == 0.0) return RateResult{0.0, 0.0, RateMethod::monte_carlo};

  const double scale = rho_eff.value / n_tx;
  const double overhead = static_cast<double>(t_d) / coherence;
  const int q = std::min(n_rx, n_tx);
  const auto kernel = [&](int k) {
    RandomSource sub = rng.substream(static_cast<std::uint64_t>(k));
    const ComplexMatrix h = sample_cgaussian(n_rx, n_tx, sub);
    // log2 det(I + c H H^H) over the smaller Gram side (same determinant).
    ComplexMatrix m = (n_rx <= n_tx) ? ComplexMatrix(scale * (h * h.adjoint()))
                                     : ComplexMatrix(scale * (h.adjoint() * h));
    m.diagonal().array() += 1.0;
    const Eigen::LLT<ComplexMatrix> llt(m);
    double log2_det = 0.0;
    for (int i = 0; i < q; ++i) {
      log2_det += 2.0 * std::log2(llt.matrixLLT()(i, i).real());
    }
    return overhead * log2_det;
  };
  const MonteCarloStats stats = detail::reduce_stats(detail::run_trials(trials, workers, kernel));
  return RateResult{stats.mean, stats.std_err, RateMethod::monte_carlo};
}

}  // namespace rtri
