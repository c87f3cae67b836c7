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

#include "thermsub/urn.hpp"

#include "thermsub/errors.hpp"
#include "thermsub/rng.hpp"

#include <string>

namespace thermsub {

namespace {

void check_urn(UrnScheme scheme, int k, int m, int M) {
  detail::require(k >= 0, "urn: k must be non-negative");
  detail::require(m >= 1 && m <= M, "urn: need integers 1 <= m <= M");
  if (scheme == UrnScheme::without_return)
    detail::require(k <= M, "urn: without-return scheme cannot draw more than M balls");
}

// Urn composition after `draws` draws of which `reds` were red.
struct Composition {
  std::int64_t red;
  std::int64_t total;
};

Composition composition(UrnScheme scheme, int m, int M, int draws, int reds) {
  switch (scheme) {
  case UrnScheme::with_return: return {m, M};
  case UrnScheme::without_return: return {m - reds, M - draws};
  case UrnScheme::return_with_addition: return {m + reds, M + draws};
  }
  return {m, M};
}

} // namespace

double UrnTrialResult::frequency(int j) const {
  if (j < 0 || j >= static_cast<int>(counts.size()) || trials == 0) return 0.0;
  return static_cast<double>(counts[j]) / static_cast<double>(trials);
}

double UrnTrialResult::empirical_mean() const {
  double s = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) s += static_cast<double>(j) * counts[j];
  return s / static_cast<double>(trials);
}

double UrnTrialResult::empirical_g2() const {
  double sf = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const double dj = static_cast<double>(j);
    sf += dj * (dj - 1.0) * counts[j];
  }
  sf /= static_cast<double>(trials);
  const double mean = empirical_mean();
  return sf / (mean * mean);
}

UrnTrialResult urn_simulate(UrnScheme scheme, int k, int m, int M, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers) {
  check_urn(scheme, k, m, M);
  detail::require(trials >= 1, "urn: trials must be at least 1");
  if (workers == 0) workers = 1;

  const auto blocks = partition_range(trials, workers);
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(k + 1, 0));
  run_workers(workers, [&](unsigned w) {
    Engine eng = substream(seed, w);
    auto& hist = partial[w];
    for (std::size_t t = blocks[w].first; t < blocks[w].second; ++t) {
      std::int64_t red = m, white = M - m;
      int drawn_red = 0;
      for (int d = 0; d < k; ++d) {
        const double pick = uniform01(eng) * static_cast<double>(red + white);
        const bool is_red = pick < static_cast<double>(red);
        drawn_red += is_red ? 1 : 0;
        switch (scheme) {
        case UrnScheme::with_return: break;
        case UrnScheme::without_return: (is_red ? red : white) -= 1; break;
        case UrnScheme::return_with_addition: (is_red ? red : white) += 1; break;
        }
      }
      ++hist[drawn_red];
    }
  });

  UrnTrialResult out;
  out.counts.assign(k + 1, 0);
  for (const auto& h : partial)
    for (int j = 0; j <= k; ++j) out.counts[j] += h[j];
  out.trials = trials;
  out.seed = seed;
  out.workers = workers;
  return out;
}

std::vector<Rational> urn_enumerate_exact(UrnScheme scheme, int k, int m, int M) {
  check_urn(scheme, k, m, M);
  if (k > kUrnEnumerationMaxDraws)
    throw ResourceError("urn_enumerate_exact: k above cap " +
                        std::to_string(kUrnEnumerationMaxDraws));
  // dist[j] = probability of j reds after the current number of draws.
  std::vector<Rational> dist(k + 1, Rational(0));
  dist[0] = 1;
  for (int d = 0; d < k; ++d) {
    std::vector<Rational> next(k + 1, Rational(0));
    for (int j = 0; j <= d; ++j) {
      if (dist[j] == 0) continue;
      const Composition c = composition(scheme, m, M, d, j);
      const Rational p_red(c.red, c.total);
      next[j + 1] += dist[j] * p_red;
      next[j] += dist[j] * (1 - p_red);
    }
    dist = std::move(next);
  }
  return dist;
}

Rational urn_sequence_probability(UrnScheme scheme, std::span<const bool> reds, int m, int M) {
  check_urn(scheme, static_cast<int>(reds.size()), m, M);
  Rational prob = 1;
  int drawn_red = 0;
  for (std::size_t d = 0; d < reds.size(); ++d) {
    const Composition c = composition(scheme, m, M, static_cast<int>(d), drawn_red);
    const Rational p_red(c.red, c.total);
    prob *= reds[d] ? p_red : 1 - p_red;
    drawn_red += reds[d] ? 1 : 0;
  }
  return prob;
}

BigInt statistical_weight(int k, int M) {
  detail::require(k >= 0 && M >= 1, "statistical_weight needs k >= 0, M >= 1");
  return binomial(static_cast<std::int64_t>(M) + k - 1, k);
}

} // namespace thermsub
