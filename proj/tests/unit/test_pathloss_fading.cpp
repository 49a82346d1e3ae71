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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "snc/fading.hpp"
#include "snc/pathloss.hpp"

using Catch::Approx;
using namespace snc;

namespace {

// Independent oracle: brute-force piecewise quadrature on a long finite range
// with an analytic power tail.
double oracle_integral(const PathLossModel& l, double R, bool weighted) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double r) { return (weighted ? r : 1.0) * l(r); };
  std::vector<double> cuts = {0.0};
  for (double b : l.breakpoints())
    if (b < R) cuts.push_back(b);
  const double top = std::isinf(R) ? 200.0 : R;
  for (double x = 1.0; x < top; x *= 2.0) cuts.push_back(x);
  cuts.push_back(top);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) sum += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-13);
  if (std::isinf(R) && l.kind() == PathLossModel::Kind::power_law) {
    const double a = l.alpha() * l.power();
    sum += weighted ? std::pow(top, 2 - a) / (a - 2) : std::pow(top, 1 - a) / (a - 1);
  }
  if (std::isinf(R) && l.kind() == PathLossModel::Kind::exponential) {
    const double b = l.param() * l.power();
    sum += weighted ? std::exp(-b * top) * (top / b + 1 / (b * b)) : std::exp(-b * top) / b;
  }
  return sum;
}

}  // namespace

TEST_CASE("path loss values", "[pathloss]") {
  const auto p = PathLossModel::power_law(4.0);
  CHECK(p(0.0) == 1.0);
  CHECK(p(0.5) == 1.0);
  CHECK(p(2.0) == Approx(1.0 / 16));
  CHECK(p.squared()(2.0) == Approx(1.0 / 256));
  CHECK(PathLossModel::exponential(1.0)(2.0) == Approx(std::exp(-2.0)));
  CHECK(PathLossModel::indicator(1.0)(1.0) == 1.0);
  CHECK(PathLossModel::indicator(1.0)(1.0 + 1e-12) == 0.0);
  CHECK(PathLossModel::parse("power:alpha=3")(2.0) == Approx(0.125));
  CHECK(PathLossModel::parse("exp:beta=0.5")(2.0) == Approx(std::exp(-1.0)));
  CHECK(PathLossModel::parse("indicator:r0=2")(1.9) == 1.0);
  CHECK_THROWS(PathLossModel::parse("power:beta=3"));
  CHECK_THROWS(PathLossModel::power_law(2.0).integral_r(std::numeric_limits<double>::infinity()));
  CHECK_FALSE(PathLossModel::power_law(2.0).integrable());
}

TEST_CASE("path loss integrals against quadrature", "[pathloss]") {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<PathLossModel> models = {
      PathLossModel::power_law(2.5), PathLossModel::power_law(4.0),
      PathLossModel::power_law(3.0).squared(), PathLossModel::exponential(0.7),
      PathLossModel::exponential(0.7).squared(), PathLossModel::indicator(1.7),
      PathLossModel::tabulated({{0.0, 1.0}, {0.5, 0.8}, {1.5, 0.2}}, 4.0)};
  for (const auto& l : models) {
    for (double R : {0.3, 1.0, 1.6, 7.5, inf}) {
      if (std::isinf(R) && l.kind() == PathLossModel::Kind::tabulated) continue;
      INFO(l.describe() << " R=" << R);
      REQUIRE(l.integral(R) == Approx(oracle_integral(l, R, false)).epsilon(1e-9));
      REQUIRE(l.integral_r(R) == Approx(oracle_integral(l, R, true)).epsilon(1e-9));
    }
  }
}

TEST_CASE("path loss is bounded and non-increasing", "[pathloss][property]") {
  for (const auto& l : {PathLossModel::power_law(3.0), PathLossModel::exponential(2.0),
                        PathLossModel::indicator(1.0),
                        PathLossModel::tabulated({{0.0, 1.0}, {2.0, 0.5}}, 3.0)}) {
    double prev = l(0.0);
    REQUIRE(prev == 1.0);
    for (double r = 0.01; r < 20.0; r += 0.01) {
      const double v = l(r);
      REQUIRE(v <= prev);
      REQUIRE(v >= 0.0);
      prev = v;
    }
  }
}

TEST_CASE("fading samples", "[fading]") {
  for (double h : FadingModel::none().sample(1000, 1)) REQUIRE(h == 1.0);

  const auto moments = [](const std::vector<double>& v) {
    double m = 0, m2 = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double x : v) m2 += (x - m) * (x - m);
    return std::pair{m, m2 / static_cast<double>(v.size() - 1)};
  };
  const auto [mr, vr] = moments(FadingModel::rayleigh().sample(1000000, 3));
  CHECK(std::abs(mr - 1.0) < 0.005);
  CHECK(std::abs(vr - 1.0) < 0.01);
  const auto [mn, vn] = moments(FadingModel::nakagami(2.0).sample(1000000, 4));
  CHECK(std::abs(mn - 1.0) < 0.005);
  CHECK(std::abs(vn - 0.5) < 0.01);
  CHECK(FadingModel::rayleigh().sample(5, 9) == FadingModel::rayleigh().sample(5, 9));
}

TEST_CASE("fading distribution functions", "[fading]") {
  const auto r = FadingModel::rayleigh();
  CHECK(r.ccdf(1.0) == Approx(std::exp(-1.0)));
  CHECK(r.pdf(0.5) == Approx(std::exp(-0.5)));
  CHECK(r.upper_quantile(std::exp(-2.0)) == Approx(2.0));
  CHECK(FadingModel::nakagami(1.0) == r);
  const auto n3 = FadingModel::nakagami(3.0);
  CHECK(n3.ccdf(n3.upper_quantile(0.01)) == Approx(0.01));
  CHECK(n3.second_moment() == Approx(4.0 / 3.0));
  CHECK(n3.laplace_neg(0.5) == Approx(std::pow(1 - 0.5 / 3, -3.0)));
  CHECK(FadingModel::parse("nakagami:m=3") == n3);
  CHECK(FadingModel::parse("none").kind() == FadingModel::Kind::none);
  CHECK_THROWS(FadingModel::parse("rician"));
}

TEST_CASE("log Laplace transform of the fading", "[fading]") {
  const auto l = PathLossModel::power_law(4.0);
  for (const auto& f : {FadingModel::none(), FadingModel::rayleigh(), FadingModel::nakagami(3.0)})
    for (double r : {0.0, 0.7, 3.0}) REQUIRE(log_laplace_tilde(f, 0.0, l, r) == 0.0);

  // s l(r) = 0.5 inside the flat part of l.
  CHECK(log_laplace_tilde(FadingModel::rayleigh(), 0.5, l, 0.7) == Approx(std::log(2.0)));
  CHECK(log_laplace_tilde(FadingModel::rayleigh(), 0.8, l, std::pow(1.6, 0.25)) ==
        Approx(std::log(2.0)));

  for (const auto& f : {FadingModel::rayleigh(), FadingModel::nakagami(3.0)}) {
    const double s = 0.6;
    const double r = 200.0;
    REQUIRE(log_laplace_tilde(f, s, l, r) / (s * l(r)) == Approx(1.0).epsilon(1e-6));
    double prev = log_laplace_tilde(f, s, l, 0.0);
    REQUIRE(prev < std::numeric_limits<double>::infinity());
    for (double x = 0.05; x < 10; x += 0.05) {
      const double v = log_laplace_tilde(f, s, l, x);
      REQUIRE(v <= prev);
      REQUIRE(v >= 0.0);
      prev = v;
    }
  }
  CHECK_THROWS(log_laplace_tilde(FadingModel::rayleigh(), 1.0, l, 0.0));
  CHECK_THROWS(log_laplace_tilde(FadingModel::nakagami(2.0), 2.5, l, 0.5));
}
