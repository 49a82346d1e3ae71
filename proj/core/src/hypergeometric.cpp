// Copyright 2026 The SNC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snc/hypergeometric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/digamma.hpp>

namespace snc {
namespace {

constexpr double kEps = 1e-17;
constexpr int kMaxTerms = 100000;

// a * sum_n z^n / (n + a), convergent for |z| < 1.
double direct_series(double a, double z) {
  double sum = 0.0;
  double zn = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double term = zn / (n + a);
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
    zn *= z;
  }
  return a * sum;
}

// 2F1(a, a; a+1; w) for |w| <= 2/3.
double pfaff_series(double a, double w) {
  double sum = 1.0;
  double term = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (a + n) / ((a + 1.0 + n) * (n + 1.0)) * w;
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
  }
  return sum;
}

// Expansion around z = 1 for the degenerate case c - a - b = 0.
double near_one(double a, double z) {
  const double w = 1.0 - z;
  const double lw = std::log(w);
  double coef = 1.0;  // (a)_n / n!
  double wn = 1.0;
  double sum = 0.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double bracket = boost::math::digamma(n + 1.0) - boost::math::digamma(a + n) - lw;
    const double term = coef * bracket * wn;
    sum += term;
    if (n > 2 && std::abs(term) <= kEps * std::abs(sum)) break;
    coef *= (a + n) / (n + 1.0);
    wn *= w;
  }
  return a * sum;
}

}  // namespace

double hyp2f1_kernel(double a, double z) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("hyp2f1_kernel requires 0 < a < 1");
  if (!(z < 1.0) || std::isnan(z)) throw std::domain_error("hyp2f1_kernel requires z < 1");
  if (z == 0.0) return 1.0;
  if (std::abs(z) <= 0.5) return direct_series(a, z);
  if (z > 0.5) return near_one(a, z);
  if (z >= -2.0) {
    // Pfaff: (1 - z)^-a 2F1(a, a; a+1; z/(z-1)), argument in [1/3, 2/3].
    return std::pow(1.0 - z, -a) * pfaff_series(a, z / (z - 1.0));
  }
  // Connection formula at infinity; the second series argument is 1/z in (-1/2, 0).
  const double u = 1.0 / z;
  double inner = 0.0;
  double un = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double term = un / (n + 1.0 - a);
    inner += term;
    if (std::abs(term) <= kEps * std::abs(inner)) break;
    un *= u;
  }
  inner *= 1.0 - a;
  const double lead = a * std::numbers::pi / std::sin(std::numbers::pi * a) * std::pow(-z, -a);
  return lead + a / (a - 1.0) * (-u) * inner;
}

double hyp2f1_kernel(double a, double b, double c, double z) {
  if (b != 1.0 || std::abs(c - (a + 1.0)) > 1e-15 * std::max(1.0, std::abs(c))) {
    throw std::domain_error("hyp2f1_kernel supports only b = 1, c = a + 1");
  }
  return hyp2f1_kernel(a, z);
}

}  // namespace snc
