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
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "snc/pattern_io.hpp"
#include "snc/pointprocess.hpp"
#include "snc/random.hpp"

using Catch::Approx;
using namespace snc;

namespace {

std::size_t brute_count(const PointPattern& p, Point c, double r) {
  std::size_t n = 0;
  for (const auto& q : p.points()) n += p.window().distance(c, q) < r ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("PPP count and determinism", "[ppp]") {
  const Window w(20.0);
  const auto a = generate_ppp(0.5, w, 7);
  const auto b = generate_ppp(0.5, w, 7);
  CHECK(a == b);
  CHECK(a.size() > 140);
  CHECK(a.size() < 260);
  CHECK_FALSE(generate_ppp(0.5, w, 8) == a);
    CHECK_THROWS(generate_ppp(-1.0, w, 1));
}

TEST_CASE("PPP mean count over seeds", "[ppp]") {
  const Window w(20.0);
  double total = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) total += static_cast<double>(generate_ppp(0.5, w, s).size());
  // sd of the mean is sqrt(200 / 1000)
  CHECK(std::abs(total / seeds - 200.0) < 4.0 * std::sqrt(200.0 / seeds));
}

TEST_CASE("PPP quadrat counts pass a chi-squared test", "[ppp]") {
  // 4x4 quadrats, 15 degrees of freedom, 1% critical value 30.578.
  const Window w(20.0);
  const double critical = 30.578;
  int rejected = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    const auto p = generate_ppp(0.5, w, 1000 + s);
    std::array<double, 16> counts{};
    for (const auto& q : p.points()) {
      const int ix = std::min(3, static_cast<int>(q.x / 5.0));
      const int iy = std::min(3, static_cast<int>(q.y / 5.0));
      counts[static_cast<std::size_t>(iy * 4 + ix)] += 1.0;
    }
    const double expected = static_cast<double>(p.size()) / 16.0;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    rejected += chi2 > critical ? 1 : 0;
  }
  // Binomial(1000, 0.01): mean 10, sd 3.15.
  CHECK(rejected <= 25);
}

TEST_CASE("lattice pitch and density", "[lattice]") {
  CHECK(lattice_pitch(LatticeKind::square, 1.0) == Approx(1.0));
  CHECK(lattice_intensity(LatticeKind::triangular, 1.0) == Approx(2.0 / std::sqrt(3.0)));
  CHECK(lattice_pitch(LatticeKind::triangular, 2.0 / std::sqrt(3.0)) == Approx(1.0));

  const Window w(40.0);
  const auto tri = generate_lattice_with_pitch(LatticeKind::triangular, 1.0, w, 3);
  // Counting points in the window cross-checks the density formula; rows are
  // snapped to fit the torus so the agreement is within a few percent.
  CHECK(tri.intensity() == Approx(2.0 / std::sqrt(3.0)).epsilon(0.05));
  CHECK(tri.min_pairwise_distance() >= 1.0 - 1e-9);

  const auto sq = generate_lattice(LatticeKind::square, 1.0, w, 3);
  CHECK(sq.size() == 1600);
  for (std::size_t i = 0; i < sq.size(); i += 37) {
    double nn = 1e9;
    for (std::size_t j = 0; j < sq.size(); ++j)
      if (j != i) nn = std::min(nn, w.distance(sq[i], sq[j]));
    REQUIRE(nn == Approx(1.0).epsilon(1e-12));
  }
  CHECK(generate_lattice(LatticeKind::square, 1.0, w, 3) == sq);
  CHECK(generate_lattice(LatticeKind::square, 1.0, w, 3)[0] == sq[0]);
}

TEST_CASE("perturbed lattice", "[lattice]") {
  const Window w(20.0);
  const auto base = generate_lattice(LatticeKind::square, 1.0, w, 1);
  CHECK(generate_perturbed_lattice(base, 0.0, 9) == base);
  const auto moved = generate_perturbed_lattice(base, 0.25, 9);
  REQUIRE(moved.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    REQUIRE(w.distance(base[i], moved[i]) <= 0.25 + 1e-12);
  CHECK(generate_perturbed_lattice(base, 0.25, 9) == moved);

  // Users on a perturbed unit lattice with intensity 1.
  const auto users = generate_perturbed_lattice(base, 0.25, 10);
  CHECK(users.intensity() == Approx(1.0));
}

TEST_CASE("Matern hardcore", "[matern]") {
  const Window w(15.0);
  for (std::uint64_t s = 0; s < 30; ++s) {
    for (auto kind : {MaternKind::I, MaternKind::II}) {
      const auto p = generate_matern(kind, 2.0, 0.5, w, s);
      REQUIRE(p.min_pairwise_distance() >= 1.0);
    }
  }
  // Exclusion disk larger than the torus: at most one point survives.
  const Window tiny(1.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    REQUIRE(generate_matern(MaternKind::II, 5.0, 2.0, tiny, s).size() <= 1);
    REQUIRE(generate_matern(MaternKind::I, 5.0, 2.0, tiny, s).size() <= 1);
  }
}

TEST_CASE("Matern I is a subset of Matern II from the same parent", "[matern][property]") {
  const Window w(12.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto parent = generate_matern_parent(1.5, w, s);
    const auto one = thin_matern(parent, MaternKind::I, 0.4);
    const auto two = thin_matern(parent, MaternKind::II, 0.4);
    REQUIRE(one.size() <= two.size());
    for (const auto& q : one.points())
      REQUIRE(std::find(two.points().begin(), two.points().end(), q) != two.points().end());
  }
}

TEST_CASE("Matern II retention matches the closed form", "[matern]") {
  const double lambda = 0.5;
  const double h = 0.25;
  const double x = lambda * std::numbers::pi * 4.0 * h * h;
  const double oracle = (1.0 - std::exp(-x)) / x;
  CHECK(matern2_retention(lambda, h) == Approx(oracle).epsilon(1e-14));

  const Window w(10.0);
  double kept = 0;
  double parents = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto parent = generate_matern_parent(lambda, w, s);
    parents += static_cast<double>(parent.parent.size());
    kept += static_cast<double>(thin_matern(parent, MaternKind::II, h).size());
  }
  const double frac = kept / parents;
  const double se = std::sqrt(oracle * (1 - oracle) / parents);
  CHECK(std::abs(frac - oracle) < 4.0 * se);
}

TEST_CASE("bipolar pairing", "[bipolar]") {
  const Window w(20.0);
  const auto tx = generate_matern(MaternKind::II, 0.5, 0.25, w, 4);
  for (double tau : {0.5, 1.0}) {
    const auto sc = generate_bipolar(tx, tau, 5);
    REQUIRE(sc.pairing.size() == tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i)
      REQUIRE(w.distance(tx[i], sc.receivers[sc.pairing[i]]) == Approx(tau).epsilon(1e-12));
  }
  CHECK_THROWS(generate_bipolar(tx, 10.0, 1));
}

TEST_CASE("superpose thin translate", "[transform]") {
  const Window w(10.0);
  const auto a = generate_ppp(1.0, w, 1);
  const auto b = generate_ppp(1.0, w, 2);
  CHECK(superpose(a, b).size() == a.size() + b.size());
  CHECK_THROWS(superpose(a, generate_ppp(1.0, Window(11.0), 2)));
  CHECK(thin(a, 1.0, 3) == a);
  CHECK(thin(a, 0.0, 3).empty());
  CHECK(thin(a, [](std::size_t, Point) { return true; }) == a);
  const auto t = translate(a, {1.5, -2.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    REQUIRE(w.distance(t[i], w.wrap({a[i].x + 1.5, a[i].y - 2.0})) < 1e-12);
}

TEST_CASE("count_in_ball", "[count]") {
  const Window w(10.0);
  const PointPattern empty(w, {});
  CHECK(count_in_ball(empty, {1, 1}, 2.0) == 0);
  const auto sq = generate_lattice_with_pitch(LatticeKind::square, 1.0, w, 0);
  const Point c = sq[0];
  CHECK(count_in_ball(sq, c, 1.01) == 5);
  CHECK(count_in_ball(sq, c, 1.0) == 1);
  CHECK(count_in_ball(sq, c, 0.0) == 0);
  CHECK_THROWS(count_in_ball(sq, c, 5.5));
  const auto p = generate_ppp(2.0, w, 8);
  for (double r : {0.3, 1.0, 2.7, 4.9}) REQUIRE(count_in_ball(p, {3, 3}, r) == brute_count(p, {3, 3}, r));
}

TEST_CASE("displacement bounds counts", "[count][property]") {
  const Window w(15.0);
  auto eng = make_engine(2, "probe");
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = generate_ppp(1.0, w, s);
    const double d = 0.1 + 0.5 * uniform01(eng);
    const auto q = displace(p, d, s + 100);
    for (int k = 0; k < 50; ++k) {
      const Point c{15 * uniform01(eng), 15 * uniform01(eng)};
      const double r = 0.2 + 4.0 * uniform01(eng);
      REQUIRE(count_in_ball(q, c, r) <= count_in_ball(p, c, r + d));
    }
  }
}

TEST_CASE("pattern text round trip", "[io]") {
  const Window w(13.5);
  const auto parent = generate_matern_parent(1.0, w, 77);
  std::stringstream ss;
  write_pattern(ss, parent.parent);
  const auto back = read_pattern(ss);
  CHECK(back == parent.parent);
  CHECK(back.info().generator == parent.parent.info().generator);
  CHECK(back.info().seed == parent.parent.info().seed);

  const auto sq = generate_lattice(LatticeKind::triangular, 1.0, w, 1);
  std::stringstream s2;
  write_pattern(s2, sq);
  CHECK(read_pattern(s2) == sq);
}
