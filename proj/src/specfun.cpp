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

#include "thermsub/specfun.hpp"

#include "thermsub/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace thermsub {

namespace {

// Index of the last term that can be non-zero: k, or -b when b is a
// non-positive integer smaller in magnitude.
int last_term_index(int k, double b) {
  if (b <= 0.0 && b == std::floor(b) && -b < k) return static_cast<int>(-b);
  return k;
}

constexpr double kRescaleThreshold = 1e150;
constexpr double kRescaleFactor = 1e-150;
const double kRescaleLog = 150.0 * std::numbers::ln10;
const double kPhi0 = std::pow(std::numbers::pi, -0.25);

// Walks the recurrence; visit(n, mantissa, log_scale) sees
// phi_n(x) = mantissa * exp(log_scale). on_rescale(old_log_scale) fires just
// before the mantissas are shrunk.
template <class Visit, class Rescale>
void walk_oscillator(int n_last, double x, Visit&& visit, Rescale&& on_rescale) {
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = kPhi0;
  visit(0, cur, log_scale);
  for (int n = 1; n <= n_last; ++n) {
    const double dn = static_cast<double>(n);
    const double next = std::sqrt(2.0 / dn) * x * cur - std::sqrt((dn - 1.0) / dn) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleThreshold) {
      on_rescale(log_scale);
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kRescaleLog;
    }
    visit(n, cur, log_scale);
  }
}

double flush(double v) { return std::abs(v) < kOscillatorFlush ? 0.0 : v; }

// mantissa * exp(log_scale) without an intermediate underflow of the exponential.
double unscale(double mant, double log_scale) {
  if (mant == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(mant)) + log_scale), mant);
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void check_cap(int n, int n_cap) {
  if (n < 0) throw DomainError("oscillator order must be non-negative");
  if (n > n_cap)
    throw TruncationError("oscillator order " + std::to_string(n) + " exceeds cap " +
                          std::to_string(n_cap));
}

} // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma requires a finite positive argument");
  return boost::math::lgamma(x);
}

double hyp2f1_terminating(const TerminatingHypergeometricArgs& a) {
  if (a.k < 0) throw DomainError("hyp2f1_terminating: k must be non-negative");
  const int last = last_term_index(a.k, a.b);
  for (int i = 0; i < last; ++i) {
    if (a.c + i == 0.0)
      throw SingularParameterError("hyp2f1_terminating: (c)_i vanishes at i = " +
                                   std::to_string(i + 1));
  }
  double sum = 1.0, comp = 0.0, term = 1.0;
  for (int i = 0; i < last; ++i) {
    term *= (static_cast<double>(i - a.k) * (a.b + i)) /
            ((a.c + i) * static_cast<double>(i + 1)) * a.x;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

Rational hyp2f1_terminating_exact(int k, const Rational& b, const Rational& c,
                                  const Rational& x) {
  if (k < 0) throw DomainError("hyp2f1_terminating_exact: k must be non-negative");
  if (k > kExactHypergeometricMaxOrder)
    throw ResourceError("hyp2f1_terminating_exact: k above exact-mode cap");
  int last = k;
  if (denominator(b) == 1 && b <= 0 && -b < k) last = static_cast<int>(-b);
  Rational sum = 1, term = 1;
  for (int i = 0; i < last; ++i) {
    const Rational den = c + i;
    if (den == 0)
      throw SingularParameterError("hyp2f1_terminating_exact: (c)_i vanishes");
    term *= Rational(i - k) * (b + i) / (den * (i + 1)) * x;
    sum += term;
  }
  return sum;
}

double oscillator_eigenfunction(int n, double x, int n_cap) {
  check_cap(n, n_cap);
  double value = 0.0;
  walk_oscillator(
      n, x,
      [&](int i, double mant, double log_scale) {
        if (i == n) value = unscale(mant, log_scale);
      },
      [](double) {});
  return flush(value);
}

void oscillator_eigenfunctions(double x, std::span<double> out, int n_cap) {
  if (out.empty()) return;
  const int n_last = static_cast<int>(out.size()) - 1;
  check_cap(n_last, n_cap);
  walk_oscillator(
      n_last, x,
      [&](int i, double mant, double log_scale) { out[i] = flush(unscale(mant, log_scale)); },
      [](double) {});
}

double log_weighted_square_sum(double x, std::span<const double> weights, int n_cap) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (weights.empty()) return neg_inf;
  const int n_last = static_cast<int>(weights.size()) - 1;
  check_cap(n_last, n_cap);
  double folded = neg_inf; // log of the part accumulated at earlier scales
  double partial = 0.0;
  double final_log_scale = 0.0;
  walk_oscillator(
      n_last, x,
      [&](int i, double mant, double log_scale) {
        partial += weights[i] * mant * mant;
        final_log_scale = log_scale;
      },
      [&](double old_log_scale) {
        if (partial > 0.0) folded = log_add(folded, std::log(partial) + 2.0 * old_log_scale);
        partial = 0.0;
      });
  if (partial > 0.0) folded = log_add(folded, std::log(partial) + 2.0 * final_log_scale);
  return folded;
}

} // namespace thermsub
