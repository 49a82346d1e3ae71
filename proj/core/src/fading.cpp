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

#include "snc/fading.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace snc {

FadingModel FadingModel::none() { return {Kind::none, std::numeric_limits<double>::infinity()}; }
FadingModel FadingModel::rayleigh() { return {Kind::rayleigh, 1.0}; }

FadingModel FadingModel::nakagami(double m) {
  if (!(m >= 0.5)) throw std::invalid_argument("Nakagami shape must be at least 0.5");
  if (m == 1.0) return rayleigh();
  return {Kind::nakagami, m};
}

FadingModel FadingModel::parse(const std::string& text) {
  if (text == "none") return none();
  if (text == "rayleigh") return rayleigh();
  const std::string prefix = "nakagami:m=";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string tail = text.substr(prefix.size());
    const double m = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("bad fading spec: " + text);
    return nakagami(m);
  }
  throw std::invalid_argument("unknown fading model: " + text);
}

double FadingModel::sample(Engine& eng) const {
  switch (kind_) {
    case Kind::none:
      return 1.0;
    case Kind::rayleigh:
      return -std::log1p(-uniform01(eng));
    case Kind::nakagami: {
      std::gamma_distribution<double> g(m_, 1.0 / m_);
      return g(eng);
    }
  }
  return 1.0;
}

std::vector<double> FadingModel::sample(std::size_t n, std::uint64_t seed) const {
  Engine eng = make_engine(seed, "fading");
  std::vector<double> out(n);
  for (auto& h : out) h = sample(eng);
  return out;
}

double FadingModel::pdf(double x) const {
  if (kind_ == Kind::none) throw std::domain_error("deterministic fading has no density");
  if (x < 0.0) return 0.0;
  if (kind_ == Kind::rayleigh) return std::exp(-x);
  return m_ * boost::math::gamma_p_derivative(m_, m_ * x);
}

double FadingModel::ccdf(double x) const {
  if (x < 0.0) return 1.0;
  switch (kind_) {
    case Kind::none:
      return x < 1.0 ? 1.0 : 0.0;
    case Kind::rayleigh:
      return std::exp(-x);
    case Kind::nakagami:
      return boost::math::gamma_q(m_, m_ * x);
  }
  return 0.0;
}

double FadingModel::upper_quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1)");
  switch (kind_) {
    case Kind::none:
      return 1.0;
    case Kind::rayleigh:
      return -std::log(q);
    case Kind::nakagami:
      return boost::math::gamma_q_inv(m_, q) / m_;
  }
  return 0.0;
}

double FadingModel::log_laplace_neg(double s) const {
  switch (kind_) {
    case Kind::none:
      return s;
    case Kind::rayleigh:
    case Kind::nakagami:
      if (!(s < m_)) throw std::domain_error("argument outside the exponential-moment domain");
      return -m_ * std::log1p(-s / m_);
  }
  return 0.0;
}

double FadingModel::laplace_neg(double s) const { return std::exp(log_laplace_neg(s)); }

double FadingModel::s_star() const noexcept { return m_; }

double FadingModel::second_moment() const noexcept {
  return kind_ == Kind::none ? 1.0 : 1.0 + 1.0 / m_;
}

nlohmann::json FadingModel::to_json() const { return name(); }

std::string FadingModel::name() const {
  switch (kind_) {
    case Kind::none:
      return "none";
    case Kind::rayleigh:
      return "rayleigh";
    case Kind::nakagami: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "nakagami:m=%.17g", m_);
      return buf;
    }
  }
  return "none";
}

double log_laplace_tilde(const FadingModel& model, double s, const PathLossModel& l, double r) {
  if (s < 0.0) throw std::domain_error("Chernoff parameter must be nonnegative");
  if (!(s * l(0.0) < model.s_star())) {
    throw std::domain_error("s * l(0) must be below the exponential-moment radius");
  }
  return model.log_laplace_neg(s * l(r));
}

}  // namespace snc
