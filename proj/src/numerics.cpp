// SPDX-License-Identifier: Apache-2.0

#include "rtri/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rtri {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 171> build_log_factorial_table() {
  std::array<double, 171> table{};
  long double product = 1.0L;
  table[0] = 0.0;
  for (int n = 1; n <= 170; ++n) {
    product *= static_cast<long double>(n);
    table[n] = static_cast<double>(std::log(product));
  }
  return table;
}

// E1 power series: E1(x) = -gamma - ln(x) + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= 60; ++k) {
    term *= x / k;
    const double contrib = term / k;
    sum += (k % 2 == 1) ? contrib : -contrib;
    if (contrib < 1e-18 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

// Modified Lentz continued fraction for exp(x) E1(x), x >= 1:
//   exp(x) E1(x) = 1 / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
double e1_scaled_lentz(double x) {
  constexpr double tiny = 1e-300;
  double f = x + 1.0;
  if (f == 0.0) f = tiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double a = -static_cast<double>(j) * j;
    const double b = x + 2.0 * j + 1.0;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

}  // namespace

SignedLogValue SignedLogValue::from_value(double x) {
  if (x == 0.0) return SignedLogValue{0.0, 0};
  return SignedLogValue{std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

SignedLogValue SignedLogValue::from_log(double log_magnitude, int sign) {
  if (sign == 0) return SignedLogValue{0.0, 0};
  return SignedLogValue{log_magnitude, sign > 0 ? 1 : -1};
}

double SignedLogValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_magnitude);
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: n must be >= 0, got " + std::to_string(n));
  static const std::array<double, 171> table = build_log_factorial_table();
  if (n <= 170) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: x must be > 0, got " + std::to_string(x));
  if (x < 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_lentz(x);
}

double exp_scaled_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_scaled_e1: x must be > 0, got " + std::to_string(x));
  if (x < 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_lentz(x);
}

double scaled_upper_gamma_nonpos(int a, double x) {
  if (a > 0) throw std::domain_error("scaled_upper_gamma_nonpos: a must be <= 0, got " + std::to_string(a));
  if (!(x > 0.0)) {
    throw std::domain_error("scaled_upper_gamma_nonpos: x must be > 0, got " + std::to_string(x));
  }
  double g = exp_scaled_e1(x);  // exp(x) Gamma(0, x)
  // Downward recurrence in scaled form: G(k-1) = (G(k) - x^(k-1)) / (k-1).
  double x_pow = 1.0 / x;  // x^(k-1) at k = 0
  for (int k = 0; k > a; --k) {
    g = (g - x_pow) / (k - 1);
    x_pow /= x;
  }
  return g;
}

SignedLogSum signed_log_sum(std::span<const SignedLogValue> terms) {
  double max_log = -kInf;
  for (const auto& t : terms) {
    if (t.sign != 0) max_log = std::max(max_log, t.log_magnitude);
  }
  if (max_log == -kInf) return SignedLogSum{SignedLogValue{0.0, 0}, 1.0};

  // Neumaier-compensated accumulation of the signed sum and of sum|terms|,
  // both rescaled by the largest magnitude.
  double sum = 0.0, comp = 0.0;
  double abs_sum = 0.0, abs_comp = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double w = std::exp(t.log_magnitude - max_log);
    const double signed_w = t.sign > 0 ? w : -w;
    double v = sum + signed_w;
    comp += (std::abs(sum) >= std::abs(signed_w)) ? (sum - v) + signed_w : (signed_w - v) + sum;
    sum = v;
    v = abs_sum + w;
    abs_comp += (abs_sum >= w) ? (abs_sum - v) + w : (w - v) + abs_sum;
    abs_sum = v;
  }
  sum += comp;
  abs_sum += abs_comp;

  if (sum == 0.0) return SignedLogSum{SignedLogValue{0.0, 0}, kInf};
  SignedLogSum out;
  out.value = SignedLogValue{max_log + std::log(std::abs(sum)), sum > 0.0 ? 1 : -1};
  out.condition = abs_sum / std::abs(sum);
  return out;
}

}  // namespace rtri
