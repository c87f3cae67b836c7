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

#include "thermsub/inference.hpp"

#include "thermsub/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace thermsub {

namespace {

constexpr double kBoundaryMargin = 1e-3;
constexpr double kStdErrorTailEps = 1e-14;
constexpr double kEdgeProbe = 0.05;
// Below this the density itself underflows a double: outside the support.
const double kLogSmallestDensity = std::log(std::numeric_limits<double>::min());

SubtractedThermalParams params_for(int k, double m, double M, double mu0) {
  SubtractedThermalParams p;
  p.M = M;
  p.m = m;
  p.k = k;
  p.mu0 = mu0;
  return p;
}

} // namespace

double log_likelihood(std::span<const double> samples, const SubtractedThermalParams& p,
                      double eps_tail) {
  const QuadratureModel model = make_quadrature_model(p, eps_tail);
  double sum = 0.0, comp = 0.0;
  for (double x : samples) {
    const double v = model.log_density(x);
    if (!(v >= kLogSmallestDensity)) return -std::numeric_limits<double>::infinity();
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

FitResult fit_mu0(std::span<const double> samples, int k, double m, double M,
                  const FitOptions& options) {
  detail::require(samples.size() >= kMinFitSamples, "fit_mu0 needs at least 100 samples");
  detail::require(options.lower > 0.0 && options.upper > options.lower,
                  "fit_mu0: invalid search interval");
  detail::require(options.rel_tol > 0.0 && options.rel_tol < 0.1, "fit_mu0: invalid tolerance");
  for (double x : samples)
    detail::require<DataError>(std::isfinite(x), "fit_mu0: non-finite sample");
  params_for(k, m, M, 1.0).validate();

  auto objective = [&](double mu0) {
    const double ll = log_likelihood(samples, params_for(k, m, M, mu0), options.eps_tail);
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
  };
  const int bits = static_cast<int>(std::ceil(1.0 - std::log2(options.rel_tol)));
  std::uintmax_t max_iter = 500;
  const auto [mu0_hat, neg_ll] =
      boost::math::tools::brent_find_minima(objective, options.lower, options.upper, bits, max_iter);

  FitResult out;
  out.mu0_hat = mu0_hat;
  out.n_samples = samples.size();
  out.log_likelihood = -neg_ll;
  if (!std::isfinite(out.log_likelihood) || neg_ll == std::numeric_limits<double>::max())
    throw DataError("fit_mu0: likelihood is not finite at the optimum; samples lie outside "
                    "the model support");

  // Brent never evaluates the ends themselves; when it stops close to one,
  // compare against it.
  bool on_edge = false;
  for (double edge : {options.lower, options.upper}) {
    if (std::abs(out.mu0_hat - edge) > kEdgeProbe * edge) continue;
    const double neg_edge = objective(edge);
    if (neg_edge <= -out.log_likelihood) {
      out.mu0_hat = edge;
      out.log_likelihood = -neg_edge;
      on_edge = true;
    }
  }
  on_edge = on_edge || out.mu0_hat <= options.lower * (1.0 + kBoundaryMargin) ||
            out.mu0_hat >= options.upper * (1.0 - kBoundaryMargin);

  const double h = 1e-3 * out.mu0_hat;
  const auto ll_at = [&](double mu0) {
    return log_likelihood(samples, params_for(k, m, M, mu0), kStdErrorTailEps);
  };
  const double mid = out.mu0_hat;
  const double curvature = (ll_at(mid + h) - 2.0 * ll_at(mid) + ll_at(mid - h)) / (h * h);
  out.std_error = curvature < 0.0 ? 1.0 / std::sqrt(-curvature)
                                  : std::numeric_limits<double>::quiet_NaN();
  out.converged = !on_edge && max_iter < 500 && curvature < 0.0;
  return out;
}

std::vector<double> profile_log_likelihood(std::span<const double> samples, int k, double m,
                                           double M, std::span<const double> mu0_grid) {
  std::vector<double> out;
  out.reserve(mu0_grid.size());
  for (double mu0 : mu0_grid) out.push_back(log_likelihood(samples, params_for(k, m, M, mu0)));
  return out;
}

bool is_unimodal(std::span<const double> values) {
  if (values.size() < 3) return true;
  const auto peak = static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));
  const auto slack = [](double a, double b) { return 1e-12 * std::max(std::abs(a), std::abs(b)); };
  for (std::size_t i = 1; i <= peak; ++i)
    if (values[i] < values[i - 1] - slack(values[i], values[i - 1])) return false;
  for (std::size_t i = peak + 1; i < values.size(); ++i)
    if (values[i] > values[i - 1] + slack(values[i], values[i - 1])) return false;
  return true;
}

Chi2Result chi2_adequacy(std::span<const double> samples, const QuadratureModel& model,
                         bool fitted) {
  detail::require(samples.size() >= kMinChi2Samples, "chi2_adequacy needs at least 500 samples");
  const std::size_t n = samples.size();
  const int bins = static_cast<int>(std::min<std::size_t>(50, n / 10));
  const QuadratureCdf cdf(model);

  std::vector<double> edges;
  edges.reserve(bins - 1);
  for (int b = 1; b < bins; ++b) edges.push_back(cdf.quantile(static_cast<double>(b) / bins));

  std::vector<std::size_t> observed(bins, 0);
  for (double x : samples) {
    const auto b = std::distance(edges.begin(), std::upper_bound(edges.begin(), edges.end(), x));
    ++observed[static_cast<std::size_t>(b)];
  }
  const double expected = static_cast<double>(n) / bins;
  Chi2Result out;
  for (std::size_t o : observed) {
    const double d = static_cast<double>(o) - expected;
    out.statistic += d * d / expected;
  }
  out.bins = bins;
  out.dof = bins - 1 - (fitted ? 1 : 0);
  out.p_value = boost::math::gamma_q(0.5 * out.dof, 0.5 * out.statistic);
  return out;
}

double fidelity_diagonal(const DiagonalState& p, const DiagonalState& q) {
  const std::size_t n = std::min(p.pmf.size(), q.pmf.size());
  double overlap = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    overlap += std::sqrt(std::max(0.0, p.pmf.probabilities[i]) * std::max(0.0, q.pmf.probabilities[i]));
  return std::clamp(overlap * overlap, 0.0, 1.0);
}

std::vector<MeanPhotonRow> mean_photon_report(std::span<const int> M_list,
                                              std::span<const int> k_list, double mu0) {
  std::vector<MeanPhotonRow> rows;
  for (int M : M_list) {
    for (int k : k_list) {
      const auto p = params_for(k, 1.0, M, mu0);
      MeanPhotonRow row;
      row.M = M;
      row.k = k;
      row.mu0 = mu0;
      row.mu = mu0 * (1.0 + static_cast<double>(k) / M);
      row.pmf_mean = pmf_moments(build_pmf(p, 1e-15)).mean;
      rows.push_back(row);
    }
  }
  return rows;
}

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p_value(double d, double n_eff) {
  const double root = std::sqrt(n_eff);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

} // namespace

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
  detail::require(!samples.empty(), "ks_test needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return {d, ks_p_value(d, n)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  detail::require(!a.empty() && !b.empty(), "ks_two_sample needs two non-empty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb))};
}

} // namespace thermsub
