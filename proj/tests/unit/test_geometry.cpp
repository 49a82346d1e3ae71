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

#include <algorithm>
#include <cmath>
#include <vector>

#include "snc/geometry.hpp"
#include "snc/random.hpp"

using Catch::Approx;
using snc::Point;
using snc::Window;

TEST_CASE("wrap maps into the window", "[geometry]") {
  const Window w(10.0);
  const Point p = w.wrap({-0.5, 23.25});
  CHECK(p.x == Approx(9.5));
  CHECK(p.y == Approx(3.25));
  CHECK(w.contains(p));
  CHECK_FALSE(w.contains({10.0, 1.0}));
}

TEST_CASE("minimal image distance", "[geometry]") {
  const Window w(10.0);
  CHECK(w.distance({0.5, 0.5}, {9.5, 9.5}) == Approx(std::sqrt(2.0)));
  CHECK(w.distance({1.0, 2.0}, {4.0, 6.0}) == Approx(5.0));
  const Point d = w.displacement({9.0, 1.0}, {1.0, 1.0});
  CHECK(d.x == Approx(2.0));
  CHECK(d.y == Approx(0.0).margin(1e-15));
}

TEST_CASE("torus metric is symmetric and satisfies the triangle inequality", "[geometry][property]") {
  const Window w(7.0);
  auto eng = snc::make_engine(11, "metric");
  for (int i = 0; i < 20000; ++i) {
    Point a{7.0 * snc::uniform01(eng), 7.0 * snc::uniform01(eng)};
    Point b{7.0 * snc::uniform01(eng), 7.0 * snc::uniform01(eng)};
    Point c{7.0 * snc::uniform01(eng), 7.0 * snc::uniform01(eng)};
    REQUIRE(w.distance(a, b) == w.distance(b, a));
    REQUIRE(w.distance(a, c) <= w.distance(a, b) + w.distance(b, c) + 1e-12);
    REQUIRE(w.distance(a, b) <= std::sqrt(0.5) * 7.0 + 1e-12);
  }
}

TEST_CASE("neighbor grid matches brute force", "[geometry]") {
  const Window w(12.0);
  auto eng = snc::make_engine(3, "grid");
  std::vector<Point> pts(500);
  for (auto& p : pts) p = {12.0 * snc::uniform01(eng), 12.0 * snc::uniform01(eng)};
  const snc::NeighborGrid grid(w, pts, 0.7);
  for (int trial = 0; trial < 200; ++trial) {
    const Point c{12.0 * snc::uniform01(eng), 12.0 * snc::uniform01(eng)};
    const double r = 0.1 + 5.9 * snc::uniform01(eng);
    std::vector<std::size_t> got;
    grid.for_each_within(c, r, [&](std::size_t i, double) { got.push_back(i); });
    std::sort(got.begin(), got.end());
    std::vector<std::size_t> want;
    std::size_t best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (w.distance(c, pts[i]) <= r) want.push_back(i);
      if (w.distance(c, pts[i]) < w.distance(c, pts[best])) best = i;
    }
    REQUIRE(got == want);
    const auto nn = grid.nearest(c);
    REQUIRE(nn.has_value());
    REQUIRE(nn->first == best);
  }
}

TEST_CASE("seed derivation separates streams", "[random]") {
  CHECK(snc::derive_seed(1, "a", 0) == snc::derive_seed(1, "a", 0));
  CHECK(snc::derive_seed(1, "a", 0) != snc::derive_seed(1, "b", 0));
  CHECK(snc::derive_seed(1, "a", 0) != snc::derive_seed(1, "a", 1));
  CHECK(snc::derive_seed(1, "a", 0) != snc::derive_seed(2, "a", 0));
  auto e1 = snc::make_engine(5, "x", 2);
  auto e2 = snc::make_engine(5, "x", 2);
  for (int i = 0; i < 10; ++i) REQUIRE(e1() == e2());
}
