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
#include "thermsub/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace thermsub {

void SubtractedThermalParams::validate() const {
  using detail::require;
  require(std::isfinite(M) && std::isfinite(m) && std::isfinite(mu0),
          "parameters must be finite");
  require(M > 0.0, "M must be positive");
  require(m > 0.0 && m <= M, "m must satisfy 0 < m <= M");
  require(k >= 0, "k must be non-negative");
  require(mu0 >= 0.0, "mu0 must be non-negative");
}

double gf_thermal(double z, double mu0) { return 1.0 / (1.0 + mu0 * (1.0 - z)); }

double gf_thermal_derivative(double z, double mu0) {
  const double g = gf_thermal(z, mu0);
  return mu0 * g * g;
}

double gf_subtracted(double z, const SubtractedThermalParams& p) {
  p.validate();
  const double g = gf_thermal(z, p.mu0);
  if (p.subsystem_is_whole()) return std::pow(g, p.M + p.k);
  return std::pow(g, p.m) * hyp2f1_terminating({p.k, p.m, p.M, 1.0 - g});
}

double gf_term_count(double z, const SubtractedThermalParams& p) {
  p.validate();
  if (p.subsystem_is_whole()) return std::pow(z, p.M + p.k);
  return std::pow(z, p.m) * hyp2f1_terminating({p.k, p.m, p.M, 1.0 - z});
}

double factorial_moment(int r, const SubtractedThermalParams& p) {
  p.validate();
  const double k = p.k, m = p.m, M = p.M, mu0 = p.mu0;
  switch (r) {
  case 1:
    return m * mu0 * (1.0 + k / M);
  case 2:
    return mu0 * mu0 *
           (m * (m + 1.0) + 2.0 * k * m * m / M + 2.0 * k * m / M +
            k * (k - 1.0) * m * (m + 1.0) / (M * (M + 1.0)));
  default:
    throw DomainError("factorial_moment: only orders 1 and 2 are available");
  }
}

GfConsistencyReport gf_pmf_consistency(const SubtractedThermalParams& p,
                                       std::span<const double> z_points, double tol,
                                       double eps_tail) {
  for (double z : z_points)
    detail::require(z >= 0.0 && z < 1.0, "gf_pmf_consistency: z must lie in [0, 1)");
  const Pmf pmf = build_pmf(p, eps_tail);

  GfConsistencyReport report;
  report.z_points.assign(z_points.begin(), z_points.end());
  report.tail_bound = pmf.tail_bound;
  for (double z : z_points) {
    // Horner from the top keeps the small high-order terms accurate.
    double series = 0.0;
    for (auto it = pmf.probabilities.rbegin(); it != pmf.probabilities.rend(); ++it)
      series = series * z + *it;
    const double dev = std::abs(series - gf_subtracted(z, p));
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.inconclusive = pmf.tail_bound > tol;
  report.passed = !report.inconclusive && report.max_deviation < tol;
  return report;
}

} // namespace thermsub
