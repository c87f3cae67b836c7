/**
 * Copyright 2026 The thermsub Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "thermsub/rational.hpp"

#include <span>

namespace thermsub {

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// F(-k, b; c; x), a Gauss hypergeometric series that terminates after
/// k + 1 terms (earlier if b is a non-positive integer).
struct TerminatingHypergeometricArgs {
  int k = 0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;
};

/// Sums the series term by term from the ratio of consecutive terms, with
/// Neumaier compensation. No Gamma prefactors are formed, so large |c| is
/// fine. Throws SingularParameterError when c + i == 0 for some i before
/// the series terminates, DomainError when k < 0.
double hyp2f1_terminating(const TerminatingHypergeometricArgs& args);

/// Exact evaluation of the same series over the rationals (oracle mode).
/// Limited to k <= kExactHypergeometricMaxOrder.
inline constexpr int kExactHypergeometricMaxOrder = 30;
Rational hyp2f1_terminating_exact(int k, const Rational& b, const Rational& c,
                                  const Rational& x);

// Harmonic-oscillator eigenfunctions, normalised so that
// phi_0(x) = pi^{-1/4} exp(-x^2/2) and int phi_n^2 dx = 1. They are built by
// the upward recurrence
//   phi_n = sqrt(2/n) x phi_{n-1} - sqrt((n-1)/n) phi_{n-2}
// carried on a rescaled mantissa, so the Gaussian factor never underflows
// mid-recurrence. Final values below 1e-300 in magnitude are flushed to 0.

inline constexpr int kDefaultOscillatorCap = 512;
inline constexpr double kOscillatorFlush = 1e-300;

/// phi_n(x). Throws TruncationError when n > n_cap.
double oscillator_eigenfunction(int n, double x, int n_cap = kDefaultOscillatorCap);

/// Writes phi_0(x) .. phi_{out.size()-1}(x) into `out`.
void oscillator_eigenfunctions(double x, std::span<double> out,
                               int n_cap = kDefaultOscillatorCap);

/// ln( sum_n weights[n] * phi_n(x)^2 ), computed without underflow for large
/// |x|. Returns -inf only if every weighted term is exactly zero.
double log_weighted_square_sum(double x, std::span<const double> weights,
                               int n_cap = kDefaultOscillatorCap);

} // namespace thermsub
