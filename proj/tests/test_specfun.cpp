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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace thermsub;

namespace {

double rel_err(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

// Composite Simpson on [a, b].
template <class F>
double simpson(F&& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

} // namespace

TEST_CASE("log_gamma matches high-precision reference values") {
  // Reference values computed with 40-digit arithmetic.
  struct Case { double x, want; };
  const Case cases[] = {
      {0.1, 2.2527126517342059599},   {0.5, 0.57236494292470008707},
      {2.5, 0.28468287047291915963},  {5.0, 3.1780538303479456196},
      {10.0, 12.801827480081469611},  {123.456, 469.60554712992946873},
      {1e4, 82099.717496442377273},   {1e6, 12815504.56914761166},
  };
  for (const auto& c : cases) {
    CAPTURE(c.x);
    CHECK(rel_err(log_gamma(c.x), c.want) <= 1e-13);
  }
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("log_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("terminating hypergeometric series: worked examples") {
  CHECK(hyp2f1_terminating({0, 3.7, -2.2, 0.9}) == 1.0);
  CHECK(hyp2f1_terminating({1, 3.0, 6.0, 0.5}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hyp2f1_terminating({2, 1.0, 2.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(hyp2f1_terminating_exact(2, 1, 2, 1) == make_rational(1, 3));
}

TEST_CASE("terminating hypergeometric series: singular denominators") {
  // c = -1 makes (c)_2 vanish before a k = 3 series terminates.
  CHECK_THROWS_AS(hyp2f1_terminating({3, 1.0, -1.0, 0.5}), SingularParameterError);
  CHECK_THROWS_AS(hyp2f1_terminating_exact(3, 1, -1, make_rational(1, 2)),
                  SingularParameterError);
  // b = -1 terminates the series after one term, before the zero at i = 2.
  CHECK(hyp2f1_terminating({3, -1.0, -2.0, 0.5}) == doctest::Approx(1.0 - 0.75).epsilon(1e-15));
  // c + k - 1 < 0 never vanishes: fine.
  CHECK_NOTHROW(hyp2f1_terminating({3, 1.0, -3.5, 0.5}));
  CHECK_THROWS_AS(hyp2f1_terminating({-1, 1.0, 1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(hyp2f1_terminating_exact(31, 1, 1, 1), ResourceError);
}

TEST_CASE("floating series agrees with the exact rational oracle") {
  std::mt19937_64 gen(20260915);
  std::uniform_int_distribution<int> kd(0, 30), num(1, 400), den(1, 40), xn(0, 64);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int k = kd(gen);
    const Rational x(xn(gen), 64);
    Rational b, c;
    if (trial % 2 == 0) {
      // Photon-number regime: b = n + m > 0, c = m + 1 - M - k < 0, c + k - 1 < 0.
      b = Rational(num(gen), den(gen));
      c = Rational(-num(gen), den(gen)) - k;
    } else {
      // Generating-function regime: 0 < b <= c.
      b = Rational(num(gen), den(gen));
      c = b + Rational(num(gen), den(gen));
    }
    const Rational exact = hyp2f1_terminating_exact(k, b, c, x);
    // Condition number sum|t_i| / |sum t_i| from exact terms.
    Rational abs_sum = 1, term = 1;
    for (int i = 0; i < k; ++i) {
      term *= Rational(i - k) * (b + i) / ((c + i) * (i + 1)) * x;
      abs_sum += abs(term);
    }
    const double condition = to_double(abs_sum / abs(exact));
    if (condition > 1e4) continue;
    const double got = hyp2f1_terminating({k, to_double(b), to_double(c), to_double(x)});
    CAPTURE(k);
    CAPTURE(condition);
    CHECK(rel_err(got, to_double(exact)) <= 1e-10);
    ++checked;
  }
  CHECK(checked >= 250);
}

TEST_CASE("oscillator eigenfunctions: closed forms and reference values") {
  CHECK(oscillator_eigenfunction(0, 0.0) ==
        doctest::Approx(0.75112554446494248286).epsilon(1e-15));
  CHECK(oscillator_eigenfunction(1, 0.0) == 0.0);
  struct Case { int n; double x, want; };
  const Case cases[] = {
      {1, 0.7, 0.58200058556771562615},    {2, 1.3, 0.54299477907426908762},
      {5, -2.2, -0.2257883254285132245},   {10, 3.0, -0.42352000783766119158},
      {40, 5.5, -0.18525638116349340904},  {100, 12.0, -0.17506129306937828173},
      {200, 25.0, 8.6861569319940767253e-23}, {300, -3.3, 0.083917748400978492809},
      {512, 40.0, 5.3357337573292867199e-56},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n);
    CHECK(rel_err(oscillator_eigenfunction(c.n, c.x), c.want) <= 1e-11);
  }
  CHECK(oscillator_eigenfunction(0, 40.0) == 0.0); // e^{-800} flushed
  CHECK_THROWS_AS(oscillator_eigenfunction(513, 0.1), TruncationError);
  CHECK_NOTHROW(oscillator_eigenfunction(600, 0.1, 1000));
}

TEST_CASE("oscillator eigenfunctions: normalisation and orthogonality") {
  const double n3 = simpson([](double x) { return std::pow(oscillator_eigenfunction(3, x), 2); },
                            -20.0, 20.0, 8000);
  CHECK(std::abs(n3 - 1.0) < 1e-10);

  constexpr int kMax = 50;
  const int intervals = 8000;
  const double a = -20.0, b = 20.0, h = (b - a) / intervals;
  std::vector<std::vector<double>> table(intervals + 1, std::vector<double>(kMax + 1));
  for (int i = 0; i <= intervals; ++i) oscillator_eigenfunctions(a + i * h, table[i]);
  double worst_off = 0.0, worst_norm = 0.0;
  for (int p = 0; p <= kMax; ++p) {
    for (int q = p; q <= kMax; ++q) {
      double s = table[0][p] * table[0][q] + table[intervals][p] * table[intervals][q];
      for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * table[i][p] * table[i][q];
      s *= h / 3.0;
      if (p == q)
        worst_norm = std::max(worst_norm, std::abs(s - 1.0));
      else
        worst_off = std::max(worst_off, std::abs(s));
    }
  }
  CHECK(worst_off < 1e-8);
  CHECK(worst_norm < 1e-8);
}

TEST_CASE("oscillator recurrence residual is tiny pointwise") {
  std::vector<double> phi(121);
  for (double x : {-9.5, -3.1, -0.2, 0.0, 0.77, 4.4, 11.0}) {
    oscillator_eigenfunctions(x, phi);
    for (int n = 2; n <= 120; ++n) {
      const double rhs = std::sqrt(2.0 / n) * x * phi[n - 1] - std::sqrt((n - 1.0) / n) * phi[n - 2];
      CHECK(std::abs(phi[n] - rhs) < 1e-12);
    }
    // The batch routine and the single-order routine agree.
    CHECK(phi[77] == doctest::Approx(oscillator_eigenfunction(77, x)).epsilon(1e-14));
  }
}

TEST_CASE("log_weighted_square_sum survives Gaussian underflow") {
  std::vector<double> w(513, 0.0);
  w[512] = 1.0;
  const double got = log_weighted_square_sum(40.0, w);
  CHECK(got == doctest::Approx(2.0 * std::log(5.3357337573292867199e-56)).epsilon(1e-12));
  // Far tail of the vacuum: ln(phi_0^2) = -x^2 - ln(sqrt(pi)).
  const std::vector<double> vac{1.0};
  CHECK(log_weighted_square_sum(60.0, vac) ==
        doctest::Approx(-3600.0 - 0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  // Matches the direct sum where nothing underflows.
  std::vector<double> mix{0.5, 0.3, 0.2};
  std::vector<double> phi(3);
  oscillator_eigenfunctions(1.1, phi);
  const double direct = 0.5 * phi[0] * phi[0] + 0.3 * phi[1] * phi[1] + 0.2 * phi[2] * phi[2];
  CHECK(std::exp(log_weighted_square_sum(1.1, mix)) == doctest::Approx(direct).epsilon(1e-14));
}
