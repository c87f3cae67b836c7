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

// Ball-drawing urn simulations and their exact path-sum oracle.
//
// An urn starts with m red and M - m white balls; k balls are drawn one at a
// time and the number j of red draws is recorded. The replacement policy
// after each draw is one of:
//   with_return          ball goes back (Maxwell-Boltzmann, binomial)
//   without_return       ball is kept out (fermion-like, hypergeometric)
//   return_with_addition ball goes back with one more of its colour
//                        (boson-like, Polya)

#include "thermsub/photon_stats.hpp"
#include "thermsub/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace thermsub {

inline constexpr int kUrnEnumerationMaxDraws = 64;

struct UrnTrialResult {
  std::vector<std::uint64_t> counts; ///< trials per outcome j = 0 .. k
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  double frequency(int j) const;
  double empirical_mean() const;
  /// E[j(j-1)] / E[j]^2 over the trials.
  double empirical_g2() const;
};

/// Literal draw-by-draw simulation. Trials are split into contiguous blocks,
/// one RNG substream per worker, and histograms are merged by addition, so
/// the result is fixed by (seed, workers).
UrnTrialResult urn_simulate(UrnScheme scheme, int k, int m, int M, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers = 1);

/// Exact PMF of j by dynamic programming over (draws made, reds drawn).
std::vector<Rational> urn_enumerate_exact(UrnScheme scheme, int k, int m, int M);

/// Exact probability of one specific draw sequence (true = red).
Rational urn_sequence_probability(UrnScheme scheme, std::span<const bool> reds, int m, int M);

/// Number of ways to place k identical bosons in M levels, C(M + k - 1, k).
BigInt statistical_weight(int k, int M);

} // namespace thermsub
