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

#include "thermsub/homodyne.hpp"
#include "thermsub/photon_stats.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace thermsub {

/// Outcome of the one-parameter maximum-likelihood fit of mu0.
struct FitResult {
  double mu0_hat = 0.0;
  double std_error = 0.0;      ///< from the observed information
  double log_likelihood = 0.0; ///< at mu0_hat
  std::size_t n_samples = 0;
  bool converged = false;      ///< false when the optimum sits on the interval edge
};

struct FitOptions {
  double lower = 1e-4;
  double upper = 50.0;
  double rel_tol = 1e-6;
  double eps_tail = kDefaultTailEps;
};

inline constexpr std::size_t kMinFitSamples = 100;

/// sum_i ln p(x_i | k, m, M, mu0) under the quadrature model. A sample
/// whose density underflows double precision makes the result -inf.
double log_likelihood(std::span<const double> samples, const SubtractedThermalParams& p,
                      double eps_tail = kDefaultTailEps);

/// Maximises the likelihood over mu0 with k, m, M held fixed. Brent's
/// golden-section/parabolic search on [lower, upper]; the standard error is
/// 1/sqrt(-d2 lnL/d mu0^2) with a central second difference. If the search
/// stops near an end and the end itself is at least as likely, the end is
/// reported and the fit is flagged as not converged.
///
/// Throws DomainError for fewer than kMinFitSamples samples and DataError
/// when the likelihood is not finite at the optimum.
FitResult fit_mu0(std::span<const double> samples, int k, double m, double M,
                  const FitOptions& options = {});

/// Log-likelihood at each grid value of mu0.
std::vector<double> profile_log_likelihood(std::span<const double> samples, int k, double m,
                                           double M, std::span<const double> mu0_grid);

/// True when the sequence rises (weakly) to one peak and then falls.
bool is_unimodal(std::span<const double> values);

struct Chi2Result {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  int bins = 0;
};

inline constexpr std::size_t kMinChi2Samples = 500;

/// Pearson chi-square with bins equiprobable under the model. The bin count
/// is min(50, floor(N / 10)) so every bin expects at least 10 counts; dof
/// drops one more when the model was fitted to these same samples.
Chi2Result chi2_adequacy(std::span<const double> samples, const QuadratureModel& model,
                         bool fitted);

/// A Fock-diagonal density matrix.
struct DiagonalState {
  Pmf pmf;
};

/// Fidelity between commuting (Fock-diagonal) states: (sum_n sqrt(p_n q_n))^2.
/// The shorter PMF is padded with zeros.
double fidelity_diagonal(const DiagonalState& p, const DiagonalState& q);

struct MeanPhotonRow {
  int M = 1;
  int k = 0;
  double mu0 = 0.0;
  double mu = 0.0;       ///< mu0 (1 + k/M)
  double pmf_mean = 0.0; ///< mean of the m = 1 PMF, for cross-checking
};

/// Mean photon number of a single registered mode for every (M, k).
std::vector<MeanPhotonRow> mean_photon_report(std::span<const int> M_list,
                                              std::span<const int> k_list, double mu0);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_survival(double lambda);

/// One-sample KS test against a continuous CDF.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS test.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

} // namespace thermsub
