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

#pragma once

#include <functional>
#include <span>

namespace snc {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on a finite interval.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-11, unsigned max_depth = 30);

/// Integral over [a, inf) through the exp-sinh rule.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double rel_tol = 1e-11);

/// Splits [a, b] at the given interior breakpoints and sums the pieces in order.
/// `b` may be +inf, in which case the last piece uses the semi-infinite rule.
QuadResult integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                               std::span<const double> breakpoints, double rel_tol = 1e-11);

}  // namespace snc
