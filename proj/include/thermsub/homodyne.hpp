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

// Quadrature statistics of phase-invariant states. With photon-number
// weights P(n) the homodyne density is
//
//   p(x) = sum_n P(n) phi_n(x)^2
//
// in the convention where the vacuum has <x^2> = 1/2, so that for any such
// state <x^2> = <n> + 1/2.

#include "thermsub/photon_stats.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace thermsub {

/// Oscillator order cap used for quadrature models. Large mu0 (the fit
/// explores up to 50) pushes the PMF truncation well past the 512 default.
inline constexpr int kQuadratureOscillatorCap = 20000;

class QuadratureModel {
public:
  static constexpr std::string_view convention = "vacuum-variance-1/2";

  explicit QuadratureModel(Pmf pmf);

  const Pmf& pmf() const { return pmf_; }
  int n_max() const { return pmf_.n_max(); }
  /// sqrt(2 n_max) + 6: classical turning point of the top Fock term plus a
  /// six-sigma vacuum margin.
  double x_max() const;

  double density(double x) const;
  double log_density(double x) const;

private:
  Pmf pmf_;
};

QuadratureModel make_quadrature_model(const SubtractedThermalParams& p,
                                      double eps_tail = kDefaultTailEps);

double quadrature_density(double x, const QuadratureModel& model);

/// Tabulated CDF on [-x_max, x_max]. Between nodes the density is treated
/// as linear, which makes both the CDF and its inverse closed-form per cell.
class QuadratureCdf {
public:
  enum class Rule {
    trapezoid,      ///< cumulative trapezoid on the nodes
    gauss_legendre, ///< 5-point Gauss-Legendre per cell (reference accuracy)
  };

  QuadratureCdf(const QuadratureModel& model, double step = 0.01,
                Rule rule = Rule::gauss_legendre);

  double operator()(double x) const;
  double quantile(double u) const;
  /// Integral over the table range before normalisation.
  double raw_mass() const { return raw_mass_; }
  double lower() const { return x0_; }
  double upper() const { return x0_ + h_ * static_cast<double>(density_.size() - 1); }

private:
  double x0_ = 0.0;
  double h_ = 0.01;
  double raw_mass_ = 1.0;
  std::vector<double> density_; // at nodes, normalised
  std::vector<double> cdf_;     // at nodes, normalised
};

/// Draws N quadratures by inverting a cumulative-trapezoid CDF on a grid of
/// spacing 0.01.
std::vector<double> sample_quadratures(const QuadratureModel& model, std::size_t n,
                                       std::uint64_t seed);

struct QuadratureMoments {
  double mass = 0.0;
  double second = 0.0; ///< <x^2>
  double fourth = 0.0; ///< <x^4>
  double excess_kurtosis = 0.0;
};

/// Moments of the density by Gauss-Legendre quadrature on [-x_max, x_max].
QuadratureMoments quadrature_moments(const QuadratureModel& model);

/// The same moments from the Fock weights: <n|x^2|n> = n + 1/2 and
/// <n|x^4|n> = (6n^2 + 6n + 3)/4.
QuadratureMoments fock_quadrature_moments(const Pmf& pmf);

} // namespace thermsub
