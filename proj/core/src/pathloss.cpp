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

#include "snc/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace snc {
namespace {

double parse_key(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  if (pos == std::string::npos) throw std::invalid_argument("missing '" + key + "' in " + text);
  std::size_t used = 0;
  const double v = std::stod(text.substr(pos + key.size() + 1), &used);
  if (used == 0) throw std::invalid_argument("bad value for '" + key + "' in " + text);
  return v;
}

}  // namespace

PathLossModel PathLossModel::power_law(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power-law exponent must be positive");
  return {Kind::power_law, alpha};
}

PathLossModel PathLossModel::exponential(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("exponential rate must be positive");
  return {Kind::exponential, beta};
}

PathLossModel PathLossModel::indicator(double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("indicator radius must be positive");
  return {Kind::indicator, r0};
}

PathLossModel PathLossModel::tabulated(std::vector<std::pair<double, double>> knots,
                                       double tail_alpha) {
  if (knots.size() < 2 || knots.front().first != 0.0 || knots.front().second != 1.0) {
    throw std::invalid_argument("tabulated path loss must start at (0, 1)");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first)) {
      throw std::invalid_argument("tabulated knots must be strictly increasing in r");
    }
    if (knots[i].second > knots[i - 1].second || knots[i].second < 0.0) {
      throw std::invalid_argument("path loss must be non-increasing and nonnegative");
    }
  }
  if (!(knots.back().second > 0.0)) {
    throw std::invalid_argument("last tabulated value must be positive");
  }
  if (!(tail_alpha > 2.0)) throw std::invalid_argument("tail exponent must exceed 2");
  PathLossModel m(Kind::tabulated, tail_alpha);
  m.knots_ = std::move(knots);
  return m;
}

PathLossModel PathLossModel::parse(const std::string& text) {
  if (text.rfind("power", 0) == 0) return power_law(parse_key(text, "alpha"));
  if (text.rfind("exp", 0) == 0) return exponential(parse_key(text, "beta"));
  if (text.rfind("indicator", 0) == 0) return indicator(parse_key(text, "r0"));
  throw std::invalid_argument("unknown path loss model: " + text);
}

double PathLossModel::base(double r) const {
  switch (kind_) {
    case Kind::power_law:
      return r <= 1.0 ? 1.0 : std::pow(r, -param_);
    case Kind::exponential:
      return std::exp(-param_ * r);
    case Kind::indicator:
      return r <= param_ ? 1.0 : 0.0;
    case Kind::tabulated: {
      const auto& [rn, vn] = knots_.back();
      if (r >= rn) return vn * std::pow(r / rn, -param_);
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), r,
                                       [](double x, const auto& k) { return x < k.first; });
      const auto& [rb, vb] = *it;
      const auto& [ra, va] = *(it - 1);
      return va + (vb - va) * (r - ra) / (rb - ra);
    }
  }
  return 0.0;
}

double PathLossModel::operator()(double r) const {
  if (r < 0.0) r = 0.0;
  const double b = base(r);
  return power_ == 1 ? b : std::pow(b, power_);
}

double PathLossModel::neg_derivative(double r) const {
  const double k = power_;
  const double b = base(r);
  double db = 0.0;
  switch (kind_) {
    case Kind::power_law:
      db = r <= 1.0 ? 0.0 : param_ * std::pow(r, -param_ - 1.0);
      break;
    case Kind::exponential:
      db = param_ * b;
      break;
    case Kind::indicator:
      db = 0.0;
      break;
    case Kind::tabulated: {
      const auto& [rn, vn] = knots_.back();
      if (r >= rn) {
        db = param_ * b / r;
      } else {
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), r,
                                         [](double x, const auto& kn) { return x < kn.first; });
        db = ((it - 1)->second - it->second) / (it->first - (it - 1)->first);
      }
      break;
    }
  }
  return k * std::pow(b, k - 1.0) * db;
}

bool PathLossModel::integrable() const noexcept {
  if (kind_ == Kind::power_law) return param_ * power_ > 2.0;
  if (kind_ == Kind::tabulated) return param_ * power_ > 2.0;
  return true;
}

double PathLossModel::segment_integral(double a, double b, bool weighted) const {
  // Three-point Gauss-Legendre is exact for the cubic r * (linear)^2.
  static constexpr double x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double r = mid + half * x[i];
    s += w[i] * (*this)(r) * (weighted ? r : 1.0);
  }
  return s * half;
}

double PathLossModel::integral(double R) const {
  if (!(R >= 0.0)) throw std::invalid_argument("integration radius must be nonnegative");
  const double k = power_;
  switch (kind_) {
    case Kind::power_law: {
      const double a = param_ * k;
      if (R <= 1.0) return R;
      if (std::isinf(R)) {
        if (a <= 1.0) throw std::domain_error("path loss is not integrable");
        return 1.0 + 1.0 / (a - 1.0);
      }
      if (a == 1.0) return 1.0 + std::log(R);
      return 1.0 + (1.0 - std::pow(R, 1.0 - a)) / (a - 1.0);
    }
    case Kind::exponential: {
      const double b = param_ * k;
      return -std::expm1(-b * R) / b;
    }
    case Kind::indicator:
      return std::min(R, param_);
    case Kind::tabulated: {
      double s = 0.0;
      for (std::size_t i = 1; i < knots_.size() && knots_[i - 1].first < R; ++i) {
        s += segment_integral(knots_[i - 1].first, std::min(R, knots_[i].first), false);
      }
      const auto& [rn, vn] = knots_.back();
      if (R > rn) {
        const double a = param_ * k;
        const double vk = std::pow(vn, k);
        if (a <= 1.0 && std::isinf(R)) throw std::domain_error("path loss is not integrable");
        const double tail = std::isinf(R) ? 1.0 : 1.0 - std::pow(R / rn, 1.0 - a);
        s += vk * rn * tail / (a - 1.0);
      }
      return s;
    }
  }
  return 0.0;
}

double PathLossModel::integral_r(double R) const {
  if (!(R >= 0.0)) throw std::invalid_argument("integration radius must be nonnegative");
  const double k = power_;
  switch (kind_) {
    case Kind::power_law: {
      const double a = param_ * k;
      if (R <= 1.0) return 0.5 * R * R;
      if (std::isinf(R)) {
        if (a <= 2.0) throw std::domain_error("r * l(r) is not integrable");
        return 0.5 + 1.0 / (a - 2.0);
      }
      if (a == 2.0) return 0.5 + std::log(R);
      return 0.5 + (1.0 - std::pow(R, 2.0 - a)) / (a - 2.0);
    }
    case Kind::exponential: {
      const double b = param_ * k;
      if (std::isinf(R)) return 1.0 / (b * b);
      return (-std::expm1(-b * R) - b * R * std::exp(-b * R)) / (b * b);
    }
    case Kind::indicator: {
      const double m = std::min(R, param_);
      return 0.5 * m * m;
    }
    case Kind::tabulated: {
      double s = 0.0;
      for (std::size_t i = 1; i < knots_.size() && knots_[i - 1].first < R; ++i) {
        s += segment_integral(knots_[i - 1].first, std::min(R, knots_[i].first), true);
      }
      const auto& [rn, vn] = knots_.back();
      if (R > rn) {
        const double a = param_ * k;
        const double vk = std::pow(vn, k);
        const double tail = std::isinf(R) ? 1.0 : 1.0 - std::pow(R / rn, 2.0 - a);
        s += vk * rn * rn * tail / (a - 2.0);
      }
      return s;
    }
  }
  return 0.0;
}

std::vector<double> PathLossModel::breakpoints() const {
  switch (kind_) {
    case Kind::power_law:
      return {1.0};
    case Kind::exponential:
      return {};
    case Kind::indicator:
      return {param_};
    case Kind::tabulated: {
      std::vector<double> out;
      for (std::size_t i = 1; i < knots_.size(); ++i) out.push_back(knots_[i].first);
      return out;
    }
  }
  return {};
}

std::vector<std::pair<double, double>> PathLossModel::jumps() const {
  if (kind_ == Kind::indicator) return {{param_, 1.0}};
  return {};
}

PathLossModel PathLossModel::squared() const {
  PathLossModel m = *this;
  m.power_ *= 2;
  return m;
}

nlohmann::json PathLossModel::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::power_law:
      j = {{"kind", "power"}, {"alpha", param_}};
      break;
    case Kind::exponential:
      j = {{"kind", "exp"}, {"beta", param_}};
      break;
    case Kind::indicator:
      j = {{"kind", "indicator"}, {"r0", param_}};
      break;
    case Kind::tabulated:
      j = {{"kind", "tabulated"}, {"tail_alpha", param_}, {"knots", knots_}};
      break;
  }
  if (power_ != 1) j["power"] = power_;
  return j;
}

std::string PathLossModel::describe() const { return to_json().dump(); }

}  // namespace snc
