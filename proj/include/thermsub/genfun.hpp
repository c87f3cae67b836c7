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

#include <span>
#include <vector>

namespace thermsub {

/// Parameters of an m-mode subsystem of M-mode thermal light from which
/// exactly k photons were subtracted.
///
/// m and M may be non-integer (the Gamma-function forms allow it). mu0 = 0
/// is accepted as the vacuum limit and handled by dedicated branches.
struct SubtractedThermalParams {
  double M = 1.0;   ///< prepared modes
  double m = 1.0;   ///< registered modes, 0 < m <= M
  int k = 0;        ///< subtracted photons
  double mu0 = 1.0; ///< mean photons per mode

  /// Throws DomainError when an invariant is violated.
  void validate() const;
  bool subsystem_is_whole() const { return m == M; }
};

/// Single-mode thermal generating function (1 + mu0 (1 - z))^{-1}.
double gf_thermal(double z, double mu0);
/// d/dz of gf_thermal: mu0 * gf_thermal^2.
double gf_thermal_derivative(double z, double mu0);

/// G(z) = G_th^m F(-k, m; M; 1 - G_th). The m == M case uses the closed
/// form G_th^{M+k}.
double gf_subtracted(double z, const SubtractedThermalParams& p);

/// Generating function of the number of geometric terms, m + j with j
/// Polya distributed: z^m F(-k, m; M; 1 - z). Composing it with gf_thermal
/// gives gf_subtracted.
double gf_term_count(double z, const SubtractedThermalParams& p);

/// Closed-form factorial moments at z = 1, r in {1, 2}.
double factorial_moment(int r, const SubtractedThermalParams& p);

struct GfConsistencyReport {
  std::vector<double> z_points;
  std::vector<double> deviations; ///< |sum P(n) z^n - G(z)| per point
  double max_deviation = 0.0;
  double tail_bound = 0.0;        ///< omitted PMF mass
  bool passed = false;
  bool inconclusive = false;      ///< tail_bound exceeds tol
};

/// Checks that the truncated PMF and the closed-form generating function
/// describe one distribution. z_points must lie in [0, 1).
GfConsistencyReport gf_pmf_consistency(const SubtractedThermalParams& p,
                                       std::span<const double> z_points, double tol,
                                       double eps_tail = 1e-10);

} // namespace thermsub
