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
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "snc/hypergeometric.hpp"

using Catch::Approx;

namespace {

// Euler integral a * int_0^1 t^(a-1) / (1 - z t) dt, substituting t = u^(1/a)
// to remove the endpoint singularity: int_0^1 du / (1 - z u^(1/a)).
double euler_oracle(double a, double z) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double u) { return 1.0 / (1.0 - z * std::pow(u, 1.0 / a)); };
  return ts.integrate(f, 0.0, 1.0, 1e-14);
}

}  // namespace

TEST_CASE("identity cases", "[hyp2f1]") {
  for (double a : {0.1, 0.5, 0.9}) CHECK(snc::hyp2f1_kernel(a, 0.0) == 1.0);
  CHECK(snc::hyp2f1_kernel(0.5, -1.0) == Approx(std::numbers::pi / 4).epsilon(1e-14));
  for (double x : {0.1, 0.8, 1.3, 3.0, 25.0, 400.0}) {
    INFO("x=" << x);
    REQUIRE(snc::hyp2f1_kernel(0.5, -x * x) == Approx(std::atan(x) / x).epsilon(1e-12));
  }
  // artanh form on the positive side.
  for (double x : {0.2, 0.6, 0.9, 0.99}) {
    REQUIRE(snc::hyp2f1_kernel(0.5, x * x) == Approx(std::atanh(x) / x).epsilon(1e-11));
  }
}

TEST_CASE("matches the Euler integral on random inputs", "[hyp2f1]") {
  std::mt19937_64 eng(2024);
  std::uniform_real_distribution<double> ua(0.02, 0.98);
  std::uniform_real_distribution<double> uz(-6.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const double a = ua(eng);
    const double e = uz(eng);
    // z spans (-1e6, 0.999).
    const double z = e < 0 ? -std::pow(10.0, -e) + 1.0 : 1.0 - std::pow(10.0, -e);
    INFO("a=" << a << " z=" << z);
    REQUIRE(std::abs(snc::hyp2f1_kernel(a, z) - euler_oracle(a, z)) <= 1e-9);
  }
}

TEST_CASE("general entry validates the shape", "[hyp2f1]") {
  CHECK(snc::hyp2f1_kernel(0.25, 1.0, 1.25, -3.0) == snc::hyp2f1_kernel(0.25, -3.0));
  CHECK_THROWS_AS(snc::hyp2f1_kernel(0.25, 2.0, 1.25, -3.0), std::domain_error);
  CHECK_THROWS_AS(snc::hyp2f1_kernel(0.25, 1.0, 1.5, -3.0), std::domain_error);
  CHECK_THROWS(snc::hyp2f1_kernel(0.5, 1.0));
  CHECK_THROWS(snc::hyp2f1_kernel(1.5, -1.0));
}
