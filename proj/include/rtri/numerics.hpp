// SPDX-License-Identifier: Apache-2.0
//
// Special-function kernel for the closed-form rate evaluation: exponential
// integral, scaled upper incomplete gamma of non-positive integer order, and
// signed log-domain summation for factorial-weighted alternating series.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rtri {

/// A real number stored as sign and natural log of its absolute value.
/// sign == 0 means exactly zero; log_magnitude is ignored in that case.
struct SignedLogValue {
  double log_magnitude = 0.0;
  int sign = 0;

  static SignedLogValue from_value(double x);
  static SignedLogValue from_log(double log_magnitude, int sign);

  /// Decodes back to a double. Overflows to +/-inf past ~1e308.
  double value() const;
};

/// Result of a signed log-domain sum. `condition` is sum|terms| / |sum|,
/// +inf when nonzero terms cancel exactly; 1 for an empty sum.
struct SignedLogSum {
  SignedLogValue value;
  double condition = 1.0;
};

/// ln(n!). Exact product table up to n = 170, log-gamma beyond.
double log_factorial(int n);

/// Exponential integral E1(x) = integral_x^inf exp(-t)/t dt, x > 0.
/// Power series below x = 1, modified Lentz continued fraction above.
double exp_integral_e1(double x);

/// exp(x) * E1(x), evaluated jointly so it stays finite for x up to 1e6.
double exp_scaled_e1(double x);

/// exp(x) * Gamma(a, x) for integer a <= 0, x > 0. Base case a = 0 is
/// exp_scaled_e1; deeper orders by the downward recurrence
/// Gamma(a-1, x) = (Gamma(a, x) - x^(a-1) exp(-x)) / (a-1), kept in
/// scaled form throughout.
double scaled_upper_gamma_nonpos(int a, double x);

/// Compensated signed sum of log-domain terms. The result carries a
/// condition-number diagnostic instead of failing on cancellation.
SignedLogSum signed_log_sum(std::span<const SignedLogValue> terms);

}  // namespace rtri
