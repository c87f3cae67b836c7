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

#include "thermsub/photon_stats.hpp"

#include "thermsub/errors.hpp"
#include "thermsub/specfun.hpp"

#include <cmath>
#include <limits>

namespace thermsub {

namespace {

using detail::require;

// ln C(n, r) for real n and 0 <= r <= n.
double log_binomial(double n, double r) {
  return log_gamma(n + 1.0) - log_gamma(r + 1.0) - log_gamma(n - r + 1.0);
}

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

double neumaier_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

} // namespace

double Pmf::total() const { return neumaier_sum(probabilities); }

Moments pmf_moments(const Pmf& pmf) {
  Moments out;
  double mean = 0.0, sf = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    const double dn = static_cast<double>(n);
    mean += dn * pmf.probabilities[n];
    sf += dn * (dn - 1.0) * pmf.probabilities[n];
  }
  double var = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    var += d * d * pmf.probabilities[n];
  }
  out.mean = mean;
  out.second_factorial = sf;
  out.g2 = mean > 0.0 ? sf / (mean * mean) : std::numeric_limits<double>::quiet_NaN();
  out.variance = var;
  return out;
}

void PolyaParams::validate() const {
  require(k >= 0, "k must be non-negative");
  require(std::isfinite(m) && std::isfinite(M), "m and M must be finite");
  require(m > 0.0 && m <= M, "m must satisfy 0 < m <= M");
}

const char* to_string(UrnScheme scheme) {
  switch (scheme) {
  case UrnScheme::with_return: return "with_return";
  case UrnScheme::without_return: return "without_return";
  case UrnScheme::return_with_addition: return "return_with_addition";
  }
  return "unknown";
}

UrnScheme parse_urn_scheme(const std::string& name) {
  if (name == "with_return" || name == "classical") return UrnScheme::with_return;
  if (name == "without_return" || name == "fermion") return UrnScheme::without_return;
  if (name == "return_with_addition" || name == "boson" || name == "polya")
    return UrnScheme::return_with_addition;
  throw DomainError("unknown urn scheme '" + name + "'");
}

double polya_pmf(int j, const PolyaParams& p) {
  p.validate();
  if (j < 0 || j > p.k) return 0.0;
  if (p.m == p.M) return j == p.k ? 1.0 : 0.0;
  const double k = p.k, m = p.m, M = p.M, dj = j;
  const double log_p = log_gamma(k + 1.0) + log_gamma(M) + log_gamma(m + dj) +
                       log_gamma(M - m + k - dj) - log_gamma(dj + 1.0) -
                       log_gamma(k - dj + 1.0) - log_gamma(m) - log_gamma(M - m) -
                       log_gamma(M + k);
  return std::exp(log_p);
}

Rational polya_pmf_integer(int j, int k, int m, int M) {
  require(k >= 0 && m >= 1 && M > m, "polya_pmf_integer requires integers M > m >= 1, k >= 0");
  if (j < 0 || j > k) return Rational(0);
  return Rational(binomial(m + j - 1, j) * binomial(M - m + k - j - 1, k - j),
                  binomial(M + k - 1, k));
}

Rational hypergeometric_pmf_exact(int j, int k, int m, int M) {
  require(k >= 0 && m >= 0 && M >= m && M >= 1, "hypergeometric law needs 0 <= m <= M");
  require(k <= M, "without-return scheme cannot draw more than M balls");
  if (j < 0 || j > k) return Rational(0);
  return Rational(binomial(m, j) * binomial(M - m, k - j), binomial(M, k));
}

double sibling_pmf(UrnScheme scheme, int j, const PolyaParams& p) {
  p.validate();
  switch (scheme) {
  case UrnScheme::return_with_addition:
    return polya_pmf(j, p);
  case UrnScheme::with_return: {
    if (j < 0 || j > p.k) return 0.0;
    const double q = p.m / p.M;
    if (q == 1.0) return j == p.k ? 1.0 : 0.0;
    return std::exp(log_binomial(p.k, j) + j * std::log(q) + (p.k - j) * std::log1p(-q));
  }
  case UrnScheme::without_return: {
    require(is_integral(p.m) && is_integral(p.M),
            "without-return scheme needs integer m and M");
    require(p.k <= p.M, "without-return scheme cannot draw more than M balls");
    if (j < 0 || j > p.k || j > p.m || p.k - j > p.M - p.m) return 0.0;
    return std::exp(log_binomial(p.m, j) + log_binomial(p.M - p.m, p.k - j) -
                    log_binomial(p.M, p.k));
  }
  }
  throw DomainError("unknown urn scheme");
}

double negative_binomial_pmf(int n, double shape, double mu0) {
  require(shape > 0.0 && mu0 >= 0.0, "negative binomial needs shape > 0, mu0 >= 0");
  if (n < 0) return 0.0;
  if (mu0 == 0.0) return n == 0 ? 1.0 : 0.0;
  const double dn = n;
  return std::exp(log_gamma(dn + shape) - log_gamma(shape) - log_gamma(dn + 1.0) +
                  dn * std::log(mu0) - (dn + shape) * std::log1p(mu0));
}

double subtracted_thermal_pmf(int n, const SubtractedThermalParams& p) {
  p.validate();
  if (n < 0) return 0.0;
  if (p.mu0 == 0.0) return n == 0 ? 1.0 : 0.0;
  if (p.k == 0) return negative_binomial_pmf(n, p.m, p.mu0);
  if (p.subsystem_is_whole()) return negative_binomial_pmf(n, p.M + p.k, p.mu0);

  const double m = p.m, M = p.M, k = p.k, dn = n;
  const double log_prefactor = -log_gamma(m) + log_gamma(dn + m) - log_gamma(dn + 1.0) +
                               log_gamma(M) - log_gamma(M - m) + log_gamma(M + k - m) -
                               log_gamma(M + k) + dn * std::log(p.mu0) -
                               (dn + m) * std::log1p(p.mu0);
  // With m < M every c + i below is <= m - M < 0, so the series is regular
  // and all of its terms are positive.
  const double series =
      hyp2f1_terminating({p.k, dn + m, m + 1.0 - M - k, 1.0 / (1.0 + p.mu0)});
  return std::exp(log_prefactor) * series;
}

double single_mode_pmf(int n, int k, double M, double mu0) {
  require(k >= 0 && M >= 1.0 && mu0 >= 0.0, "single_mode_pmf needs k >= 0, M >= 1, mu0 >= 0");
  if (n < 0) return 0.0;
  if (mu0 == 0.0) return n == 0 ? 1.0 : 0.0;
  if (M == 1.0) return negative_binomial_pmf(n, 1.0 + k, mu0);
  const double dn = n;
  const double geometric = std::exp(dn * std::log(mu0) - (dn + 1.0) * std::log1p(mu0));
  return (M - 1.0) / (M + k - 1.0) * geometric *
         hyp2f1_terminating({k, 1.0 + dn, 2.0 - k - M, 1.0 / (1.0 + mu0)});
}

Pmf build_pmf(const SubtractedThermalParams& p, double eps_tail) {
  p.validate();
  require(eps_tail > 0.0 && eps_tail <= 1e-6, "eps_tail must lie in (0, 1e-6]");
  Pmf pmf;
  pmf.params_echo = p;
  pmf.source = "subtracted_thermal";
  if (p.mu0 == 0.0) {
    pmf.probabilities = {1.0};
    return pmf;
  }
  const double shape = p.m + p.k; // heaviest mixture component
  const double q = p.mu0 / (1.0 + p.mu0);
  for (int n = 0;; ++n) {
    if (n > kPmfHardCap)
      throw ResourceError("build_pmf: truncation order would exceed " +
                          std::to_string(kPmfHardCap));
    pmf.probabilities.push_back(subtracted_thermal_pmf(n, p));
    // Beyond n the component pmf ratio p(i+1)/p(i) = q (i + shape)/(i + 1)
    // is at most rho, so the tail is a dominated geometric series.
    const double rho = q * std::max(1.0, (n + 1.0 + shape) / (n + 2.0));
    if (rho >= 1.0) continue;
    const double bound = negative_binomial_pmf(n + 1, shape, p.mu0) / (1.0 - rho);
    if (bound <= eps_tail) {
      pmf.tail_bound = bound;
      break;
    }
  }
  return pmf;
}

Moments moments(const SubtractedThermalParams& p) {
  p.validate();
  const double k = p.k, m = p.m, M = p.M, mu0 = p.mu0;
  Moments out;
  out.mean = factorial_moment(1, p);
  out.second_factorial = factorial_moment(2, p);
  out.g2 = out.mean > 0.0 ? out.second_factorial / (out.mean * out.mean)
                          : std::numeric_limits<double>::quiet_NaN();
  const double shift = 1.0 - m * k / M;
  out.variance =
      mu0 * mu0 * (m + 1.0 - shift * shift + k * (k - 1.0) * m * (m + 1.0) / (M * (M + 1.0))) +
      out.mean;
  return out;
}

Moments polya_moments(const PolyaParams& p) {
  p.validate();
  const double k = p.k, m = p.m, M = p.M;
  Moments out;
  out.mean = k * m / M;
  out.second_factorial = k * (k - 1.0) * m * (m + 1.0) / (M * (M + 1.0));
  out.g2 = p.k == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : (M / (M + 1.0)) * ((m + 1.0) / m) * ((k - 1.0) / k);
  out.variance = k * m * (M - m) * (M + k) / (M * M * (M + 1.0));
  return out;
}

double polya_g2(const PolyaParams& p) {
  if (p.k == 0) throw DomainError("g2 is undefined for k = 0 (zero mean)");
  return polya_moments(p).g2;
}

Pmf thermo_limit_reference(double m, double mu0, double eps_tail) {
  require(m > 0.0 && mu0 > 0.0, "thermo_limit_reference needs m > 0, mu0 > 0");
  Pmf pmf = build_pmf({m, m, 0, mu0}, eps_tail);
  pmf.params_echo.reset();
  pmf.source = "thermodynamic_limit";
  return pmf;
}

double polya_gf(double z, const PolyaParams& p) {
  p.validate();
  if (p.m == p.M) return std::pow(z, p.k);
  return hyp2f1_terminating({p.k, p.m, p.M, 1.0 - z});
}

double polya_gf_z_form(double z, const PolyaParams& p) {
  p.validate();
  require(p.m < p.M, "polya_gf_z_form needs m < M");
  const double k = p.k, m = p.m, M = p.M;
  const double prefactor =
      std::exp(log_gamma(M) + log_gamma(k + M - m) - log_gamma(k + M) - log_gamma(M - m));
  return prefactor * hyp2f1_terminating({p.k, m, 1.0 - k - M + m, z});
}

double polya_scheme_gf(double z, int k, double m, double M) {
  return hyp2f1_terminating({k, m, M, 1.0 - z});
}

double hypergeometric_scheme_gf(double z, int k, double m, double M) {
  return hyp2f1_terminating({k, -m, -M, 1.0 - z});
}

double binomial_scheme_gf(double z, int k, double m, double M) {
  require(M != 0.0, "binomial_scheme_gf needs M != 0");
  return std::pow(1.0 - (m / M) * (1.0 - z), k);
}

} // namespace thermsub
