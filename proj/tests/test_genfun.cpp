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

#include "thermsub/genfun.hpp"

#include "thermsub/errors.hpp"
#include "thermsub/photon_stats.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace thermsub;

namespace {

SubtractedThermalParams P(double M, double m, int k, double mu0) { return {M, m, k, mu0}; }

} // namespace

TEST_CASE("thermal generating function") {
  CHECK(gf_thermal(1.0, 0.675) == 1.0);
  CHECK(gf_thermal(0.0, 1.0) == 0.5);
  CHECK(gf_thermal_derivative(1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  // Central difference reproduces the analytic derivative.
  const double h = 1e-5;
  const double fd = (gf_thermal(1.0, 0.3) - gf_thermal(1.0 - 2 * h, 0.3)) / (2 * h);
  CHECK(fd == doctest::Approx(gf_thermal_derivative(1.0 - h, 0.3)).epsilon(1e-9));
}

TEST_CASE("subtracted generating function: special cases") {
  for (const auto& p : {P(3, 2, 4, 0.675), P(5, 1, 0, 1.5), P(2.5, 0.7, 3, 0.2)})
    CHECK(gf_subtracted(1.0, p) == doctest::Approx(1.0).epsilon(1e-14));

  // k = 0 is the m-mode thermal state.
  for (double z : {0.0, 0.3, 0.8}) {
    const auto p = P(4, 2, 0, 0.675);
    CHECK(gf_subtracted(z, p) == doctest::Approx(std::pow(gf_thermal(z, 0.675), 2.0)).epsilon(1e-15));
  }
  // m = M: F(-k, M; M; x) = (1 - x)^k gives G_th^{M+k}. Compare the closed
  // form with the general series just below the degenerate point.
  for (double z : {0.0, 0.4, 0.9}) {
    const auto whole = P(3, 3, 2, 0.8);
    const double g = gf_thermal(z, 0.8);
    CHECK(gf_subtracted(z, whole) == doctest::Approx(std::pow(g, 5.0)).epsilon(1e-14));
    const auto near = P(3, 3 - 1e-9, 2, 0.8);
    CHECK(gf_subtracted(z, near) == doctest::Approx(std::pow(g, 5.0)).epsilon(1e-7));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(gf_subtracted(0.5, P(2, 3, 1, 0.5)), DomainError);
  CHECK_THROWS_AS(gf_subtracted(0.5, P(2, 1, -1, 0.5)), DomainError);
  CHECK_THROWS_AS(gf_subtracted(0.5, P(2, 1, 1, -0.5)), DomainError);
  CHECK_THROWS_AS(gf_subtracted(0.5, P(2, 0, 1, 0.5)), DomainError);
  CHECK_NOTHROW(gf_subtracted(0.5, P(2.5, 1.25, 1, 0.5)));
}

TEST_CASE("generating function properties") {
  const std::vector<SubtractedThermalParams> grid = {P(1, 1, 0, 0.2), P(2, 1, 3, 0.644),
                                                     P(5, 3, 5, 1.5), P(3.3, 1.7, 2, 0.9)};
  for (const auto& p : grid) {
    // Non-decreasing on [0, 1].
    double prev = gf_subtracted(0.0, p);
    for (int i = 1; i <= 100; ++i) {
      const double cur = gf_subtracted(i / 100.0, p);
      CHECK(cur >= prev - 1e-15);
      prev = cur;
    }
    // Compound construction: term-count GF composed with the thermal GF.
    for (int i = 0; i < 10; ++i) {
      const double z = i / 10.0;
      CHECK(std::abs(gf_subtracted(z, p) - gf_term_count(gf_thermal(z, p.mu0), p)) < 1e-12);
    }
    // Richardson-extrapolated backward difference at z = 1 gives the mean.
    const double h = 1e-5;
    const double d1 = (1.0 - gf_subtracted(1.0 - h, p)) / h;
    const double d2 = (1.0 - gf_subtracted(1.0 - h / 2, p)) / (h / 2);
    CHECK(std::abs(2.0 * d2 - d1 - factorial_moment(1, p)) < 1e-6);
  }
}

TEST_CASE("factorial moments") {
  CHECK(factorial_moment(1, P(2, 1, 3, 0.644)) == doctest::Approx(1.61).epsilon(1e-14));
  CHECK(factorial_moment(1, P(4, 2, 0, 0.3)) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(factorial_moment(2, P(1, 1, 0, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(factorial_moment(3, P(1, 1, 0, 1.0)), DomainError);

  // Second derivative at z = 1 by finite differences.
  const auto p = P(3, 2, 4, 0.675);
  const double h = 1e-4;
  const double fd = (gf_subtracted(1.0, p) - 2.0 * gf_subtracted(1.0 - h, p) +
                     gf_subtracted(1.0 - 2.0 * h, p)) / (h * h);
  // Backward second difference is first-order accurate; compare loosely
  // and extrapolate once.
  const double h2 = h / 2;
  const double fd2 = (gf_subtracted(1.0, p) - 2.0 * gf_subtracted(1.0 - h2, p) +
                      gf_subtracted(1.0 - 2.0 * h2, p)) / (h2 * h2);
  CHECK(std::abs(2.0 * fd2 - fd - factorial_moment(2, p)) < 1e-5);
}

TEST_CASE("PMF and generating function describe one distribution") {
  const std::vector<double> half{0.5};
  auto r = gf_pmf_consistency(P(1, 1, 0, 0.5), half, 1e-10);
  CHECK(r.passed);
  CHECK(r.max_deviation < 1e-10);

  const std::vector<double> high{0.9};
  r = gf_pmf_consistency(P(3, 2, 4, 0.675), high, 1e-8);
  CHECK(r.passed);

  const std::vector<double> zero{0.0};
  const auto p = P(2, 1, 3, 0.644);
  r = gf_pmf_consistency(p, zero, 1e-12);
  CHECK(r.max_deviation < 1e-14);
  CHECK(gf_subtracted(0.0, p) == doctest::Approx(subtracted_thermal_pmf(0, p)).epsilon(1e-14));

  // Loose truncation against a tight tolerance cannot certify anything.
  r = gf_pmf_consistency(p, high, 1e-12, 1e-7);
  CHECK(r.inconclusive);
  CHECK_FALSE(r.passed);

  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(gf_pmf_consistency(p, bad, 1e-8), DomainError);
}
