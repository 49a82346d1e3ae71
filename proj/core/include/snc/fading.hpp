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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/pathloss.hpp"
#include "snc/random.hpp"

namespace snc {

/// Unit-mean power fading: none (h = 1), Rayleigh (Exp(1)) or Nakagami-m (Gamma(m, 1/m)).
class FadingModel {
 public:
  enum class Kind { none, rayleigh, nakagami };

  static FadingModel none();
  static FadingModel rayleigh();
  static FadingModel nakagami(double m);
  /// Accepts "none", "rayleigh", "nakagami:m=<real>".
  static FadingModel parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  /// Shape parameter (1 for Rayleigh, meaningless for none).
  double m() const noexcept { return m_; }
  bool has_density() const noexcept { return kind_ != Kind::none; }

  double sample(Engine& eng) const;
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  double pdf(double x) const;
  double ccdf(double x) const;
  /// x such that ccdf(x) = q.
  double upper_quantile(double q) const;

  /// E[exp(s h)], i.e. the Laplace transform at -s.
  double laplace_neg(double s) const;
  double log_laplace_neg(double s) const;
  /// Radius of the exponential-moment domain; infinite for none.
  double s_star() const noexcept;
  double second_moment() const noexcept;

  nlohmann::json to_json() const;
  std::string name() const;

  friend bool operator==(const FadingModel&, const FadingModel&) = default;

 private:
  FadingModel(Kind kind, double m) : kind_(kind), m_(m) {}
  Kind kind_;
  double m_;
};

/// log L_h(-s l(r)); throws if s * l(0) is outside the exponential-moment domain.
double log_laplace_tilde(const FadingModel& model, double s, const PathLossModel& l, double r);

}  // namespace snc
