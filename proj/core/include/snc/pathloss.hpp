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

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace snc {

/// Bounded non-increasing path loss with l(0) = 1 and exact tail integrals.
///
/// Kinds: bounded power law min(1, r^-alpha); exponential exp(-beta r);
/// indicator 1(r <= r0); tabulated (piecewise linear knots then a power tail).
/// Every model can be raised to an integer power k, which is how l^2 is formed.
class PathLossModel {
 public:
  enum class Kind { power_law, exponential, indicator, tabulated };

  static PathLossModel power_law(double alpha);
  static PathLossModel exponential(double beta);
  static PathLossModel indicator(double r0);
  /// Knots must start at r = 0 with value 1, be strictly increasing in r and
  /// non-increasing in value. Beyond the last knot l decays as r^-tail_alpha.
  static PathLossModel tabulated(std::vector<std::pair<double, double>> knots,
                                 double tail_alpha);

  /// Parses "power:alpha=4", "exp:beta=1", "indicator:r0=2".
  static PathLossModel parse(const std::string& text);

  double operator()(double r) const;

  /// -l'(r) on the continuous pieces.
  double neg_derivative(double r) const;

  /// int_0^R l(r) dr and int_0^R r l(r) dr, R may be +inf.
  double integral(double R) const;
  double integral_r(double R) const;

  /// Kinks and jumps of l in increasing order.
  std::vector<double> breakpoints() const;
  /// (location, size of the downward jump).
  std::vector<std::pair<double, double>> jumps() const;

  PathLossModel squared() const;
  /// Integer power of the base model.
  int power() const noexcept { return power_; }

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return param_; }
  double param() const noexcept { return param_; }
  bool integrable() const noexcept;

  nlohmann::json to_json() const;
  std::string describe() const;

 private:
  PathLossModel(Kind kind, double param) : kind_(kind), param_(param) {}
  double base(double r) const;
  double segment_integral(double a, double b, bool weighted) const;

  Kind kind_;
  double param_;
  int power_ = 1;
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace snc
