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

#include "snc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace snc {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     unsigned max_depth) {
  if (a == b) return {};
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol,
                                                                     &err);
  return {v, err};
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double rel_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  double err = 0.0;
  double l1 = 0.0;
  // exp_sinh integrates over [0, inf); shift the origin to a.
  auto shifted = [&f, a](double t) { return f(a + t); };
  const double v = rule.integrate(shifted, rel_tol, &err, &l1);
  return {v, err};
}

QuadResult integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                               std::span<const double> breakpoints, double rel_tol) {
  std::vector<double> cuts{a};
  for (const double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  QuadResult total;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double lo = cuts[i];
    QuadResult part;
    if (i + 1 < cuts.size()) {
      part = integrate(f, lo, cuts[i + 1], rel_tol);
    } else if (std::isinf(b)) {
      part = integrate_to_infinity(f, lo, rel_tol);
    } else {
      part = integrate(f, lo, b, rel_tol);
    }
    total.value += part.value;
    total.error += part.error;
  }
  return total;
}

}  // namespace snc
