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

#include "thermsub/rational.hpp"

#include "thermsub/errors.hpp"

namespace thermsub {

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return BigInt(0);
  if (r > n - r) r = n - r;
  BigInt acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    acc *= (n - r + i);
    acc /= i;
  }
  return acc;
}

std::string to_fraction_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

} // namespace thermsub
