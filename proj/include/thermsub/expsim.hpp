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

// Monte Carlo of the conditional-preparation experiment: i.i.d. thermal time
// bins, a weak tap whose photon counts are Poisson in the bin intensity,
// grouping of bins into blocks of M, and keeping only the blocks whose total
// tap count equals k. The first bin of each kept block is then measured by an
// ideal homodyne detector.

#include <cstdint>
#include <string>
#include <vector>

namespace thermsub {

enum class ConditioningMode {
  /// Literal tap: c_i ~ Poisson(r |alpha_i|^2), keep a group iff sum c_i = k.
  physical_poisson_tap,
  /// The r -> 0 limit: block intensities are tilted by (sum |alpha_i|^2)^k.
  idealized_intensity_weight,
};

const char* to_string(ConditioningMode mode);
ConditioningMode parse_conditioning_mode(const std::string& name);

struct ExperimentConfig {
  int M = 1;            ///< bins per group
  int k = 0;            ///< conditioning target
  double mu0 = 1.0;     ///< mean photons per bin
  double r = 0.01;      ///< tap reflectivity, (0, 0.2]
  std::uint64_t groups = 1;
  ConditioningMode mode = ConditioningMode::idealized_intensity_weight;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  void validate() const;
};

struct ConditionalSampleSet {
  ExperimentConfig config;
  std::vector<double> quadratures; ///< bin-1 quadrature of each kept group
  std::uint64_t accepted = 0;
  std::uint64_t generated = 0;
  double acceptance_rate = 0.0;

  bool empty() const { return accepted == 0; }
};

/// Runs the experiment. Groups are split into contiguous per-worker blocks
/// with their own RNG substreams and merged in worker order, so the output
/// is fixed by (seed, workers).
///
/// In the idealized mode every group is kept: the tilted block intensity is
/// Gamma(M + k, mu0), independent of its uniform split across the bins, so
/// the weighting is realised exactly rather than by resampling. The signal
/// arm is attenuated by sqrt(1 - r) only in the physical mode.
ConditionalSampleSet simulate_conditional(const ExperimentConfig& config);

struct TapCountHistogram {
  std::vector<std::uint64_t> counts; ///< groups per total tap count
  std::uint64_t groups = 0;

  double mean() const;
  double probability(std::size_t c) const;
};

/// Unconditional distribution of the per-group tap count (physical mode).
TapCountHistogram tap_count_statistics(const ExperimentConfig& config);

/// P(sum c_i = k) for the physical tap: the count is negative binomial with
/// shape M and mean r mu0 per bin.
double analytic_acceptance_rate(const ExperimentConfig& config);

} // namespace thermsub
