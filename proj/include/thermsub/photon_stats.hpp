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

// Photon-number distributions of photon-subtracted multimode thermal light
// and of the three urn schemes (with return, without return, and return
// with one added ball of the drawn colour, i.e. Polya).
//
// The subtracted-subsystem law is a finite mixture: with j ~ Polya(k, m, M)
// the photon count is negative binomial with shape m + j and per-mode mean
// mu0. All Gamma ratios are taken in log space and the hypergeometric factor
// is summed by term ratios, so M + k in the thousands is fine.

#include "thermsub/genfun.hpp"
#include "thermsub/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace thermsub {

inline constexpr double kDefaultTailEps = 1e-10;
inline constexpr int kPmfHardCap = 100000;

/// Truncated probability mass function on n = 0 .. n_max.
struct Pmf {
  std::vector<double> probabilities;
  double tail_bound = 0.0; ///< rigorous upper bound on the omitted mass
  std::optional<SubtractedThermalParams> params_echo;
  std::string source;      ///< short description of what generated it

  std::size_t size() const { return probabilities.size(); }
  int n_max() const { return static_cast<int>(probabilities.size()) - 1; }
  double operator[](std::size_t n) const {
    return n < probabilities.size() ? probabilities[n] : 0.0;
  }
  double total() const;
};

struct Moments {
  double mean = 0.0;
  double second_factorial = 0.0;
  double g2 = 0.0;
  double variance = 0.0;
};

/// Moments computed from the (truncated) PMF entries.
Moments pmf_moments(const Pmf& pmf);

struct PolyaParams {
  int k = 0;       ///< draws
  double m = 1.0;  ///< red balls / registered modes
  double M = 1.0;  ///< all balls / all modes

  void validate() const;
};

enum class UrnScheme { with_return, without_return, return_with_addition };

const char* to_string(UrnScheme scheme);
/// Accepts the canonical names plus classical / fermion / boson aliases.
UrnScheme parse_urn_scheme(const std::string& name);

/// Polya probability of j red balls in k draws, Gamma form. For m == M the
/// law is the point mass at j = k. Zero outside 0 <= j <= k.
double polya_pmf(int j, const PolyaParams& p);

/// Same law from statistical weights, C(m+j-1, j) C(M-m+k-j-1, k-j) /
/// C(M+k-1, k), exactly. Requires integers M > m >= 1.
Rational polya_pmf_integer(int j, int k, int m, int M);

/// Exact hypergeometric (without-return) law; integer m, M with k <= M.
Rational hypergeometric_pmf_exact(int j, int k, int m, int M);

/// Urn-scheme PMF. with_return is Binomial(k, m/M); without_return is the
/// hypergeometric law and needs integer m, M with k <= M; return_with_addition
/// is polya_pmf.
double sibling_pmf(UrnScheme scheme, int j, const PolyaParams& p);

/// Negative binomial with the given shape and per-shape-unit mean mu0:
/// generating function (1 + mu0 (1 - z))^{-shape}.
double negative_binomial_pmf(int n, double shape, double mu0);

/// P(n | k, m, M, mu0) for the subtracted subsystem.
double subtracted_thermal_pmf(int n, const SubtractedThermalParams& p);

/// Single registered mode (m = 1) in its own closed form:
/// (M-1)/(M+k-1) mu0^n/(1+mu0)^{n+1} F(-k, 1+n; 2-k-M; 1/(1+mu0)).
double single_mode_pmf(int n, int k, double M, double mu0);

/// PMF truncated at the smallest n_max whose certified tail is <= eps_tail.
/// The tail is bounded by that of the heaviest mixture component (shape
/// m + k). Throws ResourceError if n_max would exceed kPmfHardCap.
Pmf build_pmf(const SubtractedThermalParams& p, double eps_tail = kDefaultTailEps);

/// Closed-form mean, second factorial moment, g2 and variance.
Moments moments(const SubtractedThermalParams& p);
/// Closed-form Polya moments. g2 is NaN for k = 0.
Moments polya_moments(const PolyaParams& p);
/// Polya g2 alone; throws DomainError for k = 0, where it is undefined.
double polya_g2(const PolyaParams& p);

/// Negative binomial of shape m and mean m mu0: the large-system limit of the
/// Polya law with k/M -> mu0.
Pmf thermo_limit_reference(double m, double mu0, double eps_tail = kDefaultTailEps);

// Generating functions of the urn laws.

/// F(-k, m; M; 1 - z).
double polya_gf(double z, const PolyaParams& p);
/// The same function written in the variable z:
/// Gamma(M)Gamma(k+M-m)/(Gamma(k+M)Gamma(M-m)) F(-k, m; 1-k-M+m; z). m < M.
double polya_gf_z_form(double z, const PolyaParams& p);
/// F(-k, m; M; 1 - z) as a bare series with no parameter checks, so that
/// negated (m, M) can be plugged in.
double polya_scheme_gf(double z, int k, double m, double M);
/// F(-k, -m; -M; 1 - z), the without-return scheme. Accepts any real m, M
/// for which the series is non-singular, including negated Polya parameters.
double hypergeometric_scheme_gf(double z, int k, double m, double M);
/// (1 - (m/M)(1 - z))^k.
double binomial_scheme_gf(double z, int k, double m, double M);

} // namespace thermsub
