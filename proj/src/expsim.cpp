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

#include "thermsub/expsim.hpp"

#include "thermsub/errors.hpp"
#include "thermsub/photon_stats.hpp"
#include "thermsub/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace thermsub {

namespace {

// One time bin: intensity I = mu0 E1 with E1 ~ Exp(1) and a tap count equal
// to the number of arrivals of a unit-rate Poisson process in [0, r I].
// Both exponentials are only materialised when the cheap bounds
// E1 <= (1 - u1)/u1 and E2 >= 1 - u2 cannot already decide that the count
// is zero; the coupling is the same either way.
struct Bin {
  double u1;
  int count;

  double intensity(double mu0) const { return -mu0 * std::log(u1); }
};

Bin draw_bin(Engine& eng, double r_mu0) {
  const double u1 = uniform_open0(eng);
  const double u2 = uniform_open0(eng);
  if (1.0 - u2 > r_mu0 * (1.0 - u1) / u1) return {u1, 0};
  const double lambda = -r_mu0 * std::log(u1);
  int c = 0;
  double arrival = -std::log(u2);
  while (arrival <= lambda) {
    ++c;
    arrival -= std::log(uniform_open0(eng));
  }
  return {u1, c};
}

double homodyne_outcome(Engine& eng, std::normal_distribution<double>& gauss,
                        double photons) {
  const double phase = 2.0 * std::numbers::pi * uniform01(eng);
  const double mean = std::numbers::sqrt2 * std::sqrt(photons) * std::cos(phase);
  return mean + std::sqrt(0.5) * gauss(eng);
}

} // namespace

const char* to_string(ConditioningMode mode) {
  switch (mode) {
  case ConditioningMode::physical_poisson_tap: return "physical_poisson_tap";
  case ConditioningMode::idealized_intensity_weight: return "idealized_intensity_weight";
  }
  return "unknown";
}

ConditioningMode parse_conditioning_mode(const std::string& name) {
  if (name == "physical_poisson_tap" || name == "physical")
    return ConditioningMode::physical_poisson_tap;
  if (name == "idealized_intensity_weight" || name == "idealized")
    return ConditioningMode::idealized_intensity_weight;
  throw DomainError("unknown conditioning mode '" + name + "'");
}

void ExperimentConfig::validate() const {
  using detail::require;
  require(M >= 1, "M must be at least 1");
  require(k >= 0, "k must be non-negative");
  require(std::isfinite(mu0) && mu0 > 0.0, "mu0 must be positive");
  require(r > 0.0 && r <= 0.2, "tap reflectivity r must lie in (0, 0.2]");
  require(groups >= 1, "groups must be at least 1");
}

ConditionalSampleSet simulate_conditional(const ExperimentConfig& config) {
  config.validate();
  const unsigned workers = config.workers == 0 ? 1 : config.workers;
  const auto blocks = partition_range(config.groups, workers);
  std::vector<std::vector<double>> partial(workers);

  if (config.mode == ConditioningMode::physical_poisson_tap) {
    const double r_mu0 = config.r * config.mu0;
    const double transmitted = 1.0 - config.r;
    run_workers(workers, [&](unsigned w) {
      Engine eng = substream(config.seed, w);
      std::normal_distribution<double> gauss;
      auto& out = partial[w];
      for (std::size_t g = blocks[w].first; g < blocks[w].second; ++g) {
        int total = 0;
        double first_u1 = 0.0;
        for (int i = 0; i < config.M && total <= config.k; ++i) {
          const Bin bin = draw_bin(eng, r_mu0);
          if (i == 0) first_u1 = bin.u1;
          total += bin.count;
        }
        if (total != config.k) continue;
        const double photons = transmitted * Bin{first_u1, 0}.intensity(config.mu0);
        out.push_back(homodyne_outcome(eng, gauss, photons));
      }
    });
  } else {
    const double beta_exponent = config.M > 1 ? 1.0 / (config.M - 1) : 0.0;
    run_workers(workers, [&](unsigned w) {
      Engine eng = substream(config.seed, w);
      std::normal_distribution<double> gauss;
      std::gamma_distribution<double> block_intensity(config.M + config.k, config.mu0);
      auto& out = partial[w];
      out.reserve(blocks[w].second - blocks[w].first);
      for (std::size_t g = blocks[w].first; g < blocks[w].second; ++g) {
        const double total = block_intensity(eng);
        // Share of bin 1 in a uniform split: Beta(1, M - 1).
        const double share =
            config.M > 1 ? 1.0 - std::pow(uniform_open0(eng), beta_exponent) : 1.0;
        out.push_back(homodyne_outcome(eng, gauss, total * share));
      }
    });
  }

  ConditionalSampleSet set;
  set.config = config;
  for (auto& part : partial) set.quadratures.insert(set.quadratures.end(), part.begin(), part.end());
  set.accepted = set.quadratures.size();
  set.generated = config.groups;
  set.acceptance_rate = static_cast<double>(set.accepted) / static_cast<double>(set.generated);
  return set;
}

double TapCountHistogram::mean() const {
  double s = 0.0;
  for (std::size_t c = 0; c < counts.size(); ++c) s += static_cast<double>(c) * counts[c];
  return s / static_cast<double>(groups);
}

double TapCountHistogram::probability(std::size_t c) const {
  return c < counts.size() ? static_cast<double>(counts[c]) / static_cast<double>(groups) : 0.0;
}

TapCountHistogram tap_count_statistics(const ExperimentConfig& config) {
  config.validate();
  detail::require(config.mode == ConditioningMode::physical_poisson_tap,
                  "tap_count_statistics needs the physical tap mode");
  const unsigned workers = config.workers == 0 ? 1 : config.workers;
  const auto blocks = partition_range(config.groups, workers);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  const double r_mu0 = config.r * config.mu0;
  run_workers(workers, [&](unsigned w) {
    Engine eng = substream(config.seed, w);
    auto& hist = partial[w];
    for (std::size_t g = blocks[w].first; g < blocks[w].second; ++g) {
      std::size_t total = 0;
      for (int i = 0; i < config.M; ++i) total += static_cast<std::size_t>(draw_bin(eng, r_mu0).count);
      if (hist.size() <= total) hist.resize(total + 1, 0);
      ++hist[total];
    }
  });
  TapCountHistogram out;
  out.groups = config.groups;
  for (const auto& h : partial) {
    if (out.counts.size() < h.size()) out.counts.resize(h.size(), 0);
    for (std::size_t c = 0; c < h.size(); ++c) out.counts[c] += h[c];
  }
  return out;
}

double analytic_acceptance_rate(const ExperimentConfig& config) {
  config.validate();
  return negative_binomial_pmf(config.k, config.M, config.r * config.mu0);
}

} // namespace thermsub
