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

#include "thermsub/homodyne.hpp"

#include "thermsub/errors.hpp"
#include "thermsub/rng.hpp"
#include "thermsub/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace thermsub {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
    0.2369268850561891};

template <class F>
double gauss_legendre_cell(double a, double b, F&& f) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) s += kGlWeights[i] * f(mid + half * kGlNodes[i]);
  return s * half;
}

} // namespace

QuadratureModel::QuadratureModel(Pmf pmf) : pmf_(std::move(pmf)) {
  detail::require(!pmf_.probabilities.empty(), "QuadratureModel needs a non-empty PMF");
  detail::require<TruncationError>(pmf_.n_max() <= kQuadratureOscillatorCap,
                                   "QuadratureModel: PMF order above oscillator cap");
}

double QuadratureModel::x_max() const {
  return std::sqrt(2.0 * static_cast<double>(n_max())) + 6.0;
}

double QuadratureModel::log_density(double x) const {
  return log_weighted_square_sum(x, pmf_.probabilities, kQuadratureOscillatorCap);
}

double QuadratureModel::density(double x) const { return std::exp(log_density(x)); }

QuadratureModel make_quadrature_model(const SubtractedThermalParams& p, double eps_tail) {
  return QuadratureModel(build_pmf(p, eps_tail));
}

double quadrature_density(double x, const QuadratureModel& model) { return model.density(x); }

QuadratureCdf::QuadratureCdf(const QuadratureModel& model, double step, Rule rule) {
  detail::require(step > 0.0, "QuadratureCdf: step must be positive");
  const double span = model.x_max();
  const auto cells = static_cast<std::size_t>(std::ceil(2.0 * span / step));
  h_ = 2.0 * span / static_cast<double>(cells);
  x0_ = -span;
  density_.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) density_[i] = model.density(x0_ + h_ * i);
  cdf_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = x0_ + h_ * i;
    const double cell = rule == Rule::trapezoid
                            ? 0.5 * h_ * (density_[i] + density_[i + 1])
                            : gauss_legendre_cell(a, a + h_, [&](double x) { return model.density(x); });
    cdf_[i + 1] = cdf_[i] + cell;
  }
  raw_mass_ = cdf_.back();
  detail::require<DataError>(raw_mass_ > 0.0, "QuadratureCdf: density integrates to zero");
  for (double& c : cdf_) c /= raw_mass_;
  for (double& d : density_) d /= raw_mass_;
}

double QuadratureCdf::operator()(double x) const {
  if (x <= x0_) return 0.0;
  if (x >= upper()) return 1.0;
  const auto i = std::min(static_cast<std::size_t>((x - x0_) / h_), density_.size() - 2);
  const double t = x - (x0_ + h_ * i);
  const double f0 = density_[i], f1 = density_[i + 1];
  const double linear_cell = 0.5 * h_ * (f0 + f1);
  const double cell = cdf_[i + 1] - cdf_[i];
  double partial = f0 * t + (f1 - f0) * t * t / (2.0 * h_);
  if (linear_cell > 0.0) partial *= cell / linear_cell;
  return std::clamp(cdf_[i] + partial, 0.0, 1.0);
}

double QuadratureCdf::quantile(double u) const {
  if (u <= 0.0) return x0_;
  if (u >= 1.0) return upper();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t i = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, cdf_.size() - 1) - 1;
  const double f0 = density_[i], f1 = density_[i + 1];
  const double linear_cell = 0.5 * h_ * (f0 + f1);
  const double cell = cdf_[i + 1] - cdf_[i];
  if (cell <= 0.0 || linear_cell <= 0.0) return x0_ + h_ * i;
  const double r = (u - cdf_[i]) * linear_cell / cell;
  // Solve f0 t + a t^2 / 2 = r in the cancellation-free form.
  const double a = (f1 - f0) / h_;
  const double disc = std::max(0.0, f0 * f0 + 2.0 * a * r);
  const double denom = f0 + std::sqrt(disc);
  const double t = denom > 0.0 ? 2.0 * r / denom : 0.0;
  return x0_ + h_ * i + std::clamp(t, 0.0, h_);
}

std::vector<double> sample_quadratures(const QuadratureModel& model, std::size_t n,
                                       std::uint64_t seed) {
  const QuadratureCdf cdf(model, 0.01, QuadratureCdf::Rule::trapezoid);
  Engine eng = substream(seed, 0);
  std::vector<double> out(n);
  for (double& x : out) x = cdf.quantile(uniform01(eng));
  return out;
}

QuadratureMoments quadrature_moments(const QuadratureModel& model) {
  const double span = model.x_max();
  const auto cells = static_cast<std::size_t>(std::ceil(2.0 * span / 0.05));
  const double h = 2.0 * span / static_cast<double>(cells);
  QuadratureMoments out;
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = -span + h * i;
    for (std::size_t g = 0; g < kGlNodes.size(); ++g) {
      const double x = a + 0.5 * h * (1.0 + kGlNodes[g]);
      const double w = 0.5 * h * kGlWeights[g] * model.density(x);
      const double x2 = x * x;
      out.mass += w;
      out.second += w * x2;
      out.fourth += w * x2 * x2;
    }
  }
  out.excess_kurtosis = out.fourth / (out.second * out.second) - 3.0;
  return out;
}

QuadratureMoments fock_quadrature_moments(const Pmf& pmf) {
  QuadratureMoments out;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    const double dn = static_cast<double>(n), p = pmf.probabilities[n];
    out.mass += p;
    out.second += p * (dn + 0.5);
    out.fourth += p * (6.0 * dn * dn + 6.0 * dn + 3.0) / 4.0;
  }
  out.excess_kurtosis = out.fourth / (out.second * out.second) - 3.0;
  return out;
}

} // namespace thermsub
