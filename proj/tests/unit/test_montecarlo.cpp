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

#include "snc/bounds.hpp"
#include "snc/montecarlo.hpp"

using Catch::Approx;
using namespace snc;

namespace {

BipolarScenario small_network(std::uint64_t seed) {
  const auto tx = generate_matern(MaternKind::II, 0.5, 0.5, Window(10.0), seed);
  return generate_bipolar(tx, 1.0, seed + 1);
}

SimConfig small_sweep() {
  SimConfig c;
  c.theta_db = {-10.0, 0.0, 10.0};
  c.realizations = 3;
  c.side = 40.0;
  c.seed = 17;
  return c;
}

}  // namespace

TEST_CASE("isolated link always succeeds without noise", "[montecarlo]") {
  const PointPattern one(Window(10.0), {{2.0, 2.0}});
  const auto sc = generate_bipolar(one, 1.0, 3);
  const auto l = PathLossModel::power_law(4.0);
  for (double th : {0.1, 10.0, 1e6}) {
    CHECK(conditional_reliability(sc, 0, th, FadingModel::rayleigh(), 0.0, l,
                                  ReliabilityMethod::exact_rayleigh) == 1.0);
  }
}

TEST_CASE("exact Rayleigh law agrees with Monte Carlo", "[montecarlo]") {
  const auto sc = small_network(5);
  REQUIRE(sc.transmitters.size() > 5);
  const auto l = PathLossModel::power_law(4.0);
  for (double th : {0.1, 1.0}) {
    const double exact = conditional_reliability(sc, 0, th, FadingModel::rayleigh(), 0.01, l,
                                                 ReliabilityMethod::exact_rayleigh);
    const auto mc = conditional_reliability_mc(sc, 0, th, FadingModel::rayleigh(), 0.01, l,
                                               1000000, 9);
    REQUIRE(std::abs(mc.mean - exact) <= 3.0 * mc.std_error);
  }
  CHECK(conditional_reliability(sc, 0, 1e12, FadingModel::rayleigh(), 0.0, l,
                                ReliabilityMethod::exact_rayleigh) < 1e-9);
}

TEST_CASE("Rayleigh link law matches the direct product", "[montecarlo]") {
  // Oracle: P(SINR > t) = exp(-t W / S) prod 1 / (1 + t g / S).
  std::vector<double> gains;
  for (int i = 1; i <= 400; ++i) gains.push_back(1.0 / std::pow(1.0 + 0.37 * i, 4.0));
  const RayleighLink law(gains, 0.8, 0.02);
  for (double th : {0.01, 0.3, 2.0, 50.0}) {
    double lg = -th * 0.02 / 0.8;
    for (double g : gains) lg -= std::log1p(th * g / 0.8);
    REQUIRE(law.log_reliability(th) == Approx(lg).epsilon(1e-9));
  }
}

TEST_CASE("ergodic rate estimators", "[montecarlo]") {
  const PointPattern one(Window(10.0), {{2.0, 2.0}});
  const auto sc = generate_bipolar(one, 1.0, 3);
  const auto l = PathLossModel::power_law(4.0);
  // SNR 1 without fading.
  const auto est = conditional_ergodic_rate_mc(sc, 0, FadingModel::none(), l(1.0), l, 10, 1);
  CHECK(est.mean == Approx(std::log(2.0)).epsilon(1e-14));

  const auto net = small_network(8);
  const RayleighLink law(interferer_gains(net, 0, l), l(1.0), 0.0);
  const auto mc = conditional_ergodic_rate_mc(net, 0, FadingModel::rayleigh(), 0.0, l, 200000, 4);
  CHECK(std::abs(mc.mean - law.ergodic_rate()) <= 3.0 * mc.std_error);
}

TEST_CASE("image shells add periodic copies", "[montecarlo]") {
  const auto net = small_network(2);
  const auto l = PathLossModel::power_law(3.0);
  const auto g0 = interferer_gains(net, 0, l, 0);
  const auto g1 = interferer_gains(net, 0, l, 1);
  CHECK(g1.size() > g0.size());
  CHECK(g0.size() == net.transmitters.size() - 1);
}

TEST_CASE("sweep dominates the analytic floor", "[montecarlo]") {
  auto cfg = small_sweep();
  const auto sweep = min_reliability_sweep(cfg);
  LinkScenario s;
  s.ball = hardcore_params(1.0);
  REQUIRE(sweep.rows.size() == 3);
  for (const auto& row : sweep.rows) {
    const double th = db_to_linear(row.theta_db);
    REQUIRE(row.min >= rayleigh_reliability_lb(s, th));
    REQUIRE(row.min >= zeta(s, th).value);
    REQUIRE(row.min <= row.q01);
    REQUIRE(row.q01 <= row.median);
  }
}

TEST_CASE("sweeps are deterministic and thread independent", "[montecarlo]") {
  auto cfg = small_sweep();
  const auto a = min_reliability_sweep(cfg).to_json().dump();
  CHECK(min_reliability_sweep(cfg).to_json().dump() == a);
  cfg.threads = 3;
  CHECK(min_reliability_sweep(cfg).to_json().dump() == a);
  cfg.seed = 18;
  CHECK(min_reliability_sweep(cfg).to_json().dump() != a);
}

TEST_CASE("single link sweep reports that link", "[montecarlo]") {
  auto cfg = small_sweep();
  cfg.realizations = 1;
  cfg.links_per_realization = 1;
  cfg.theta_db = {0.0};
  const auto sweep = min_reliability_sweep(cfg);
  REQUIRE(sweep.links == 1);
  const auto all = link_reliabilities(cfg, 0, 1.0);
  CHECK(std::find(all.begin(), all.end(), sweep.rows[0].min) != all.end());
  CHECK(sweep.rows[0].min == sweep.rows[0].median);
}

TEST_CASE("configuration validation", "[montecarlo]") {
  auto cfg = small_sweep();
  cfg.side = 30.0;
  CHECK_THROWS(cfg.validate());
  cfg.side = 40.0;
  cfg.image_shells = 5;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("interference samples", "[montecarlo]") {
  auto cfg = small_sweep();
  cfg.fading = FadingModel::none();
  cfg.geometry.pitch = 2.0;
  cfg.image_shells = 1;
  const double ub = a_ell(hardcore_params(1.0), cfg.pathloss) - 1.0;
  const auto t = interference_tail(cfg, {0.0, ub}, 2000);
  CHECK(t[0].ccdf == 1.0);
  CHECK(t[1].ccdf == 0.0);

  cfg.fading = FadingModel::rayleigh();
  LinkScenario s;
  s.ball = hardcore_params(1.0);
  std::vector<double> xs;
  for (double x = 2.0; x <= 20.0; x += 2.0) xs.push_back(x);
  for (const auto& pt : interference_tail(cfg, xs, 20000))
    REQUIRE(pt.ccdf <= interference_tail_chernoff(s, pt.x).value);
}

TEST_CASE("ergodic samples dominate the floor", "[montecarlo]") {
  auto cfg = small_sweep();
  cfg.realizations = 2;
  cfg.links_per_realization = 40;
  LinkScenario s;
  s.ball = hardcore_params(1.0);
  const auto rs = ergodic_rate_samples(cfg);
  CHECK(rs.links == 80);
  CHECK(rs.min >= ergodic_rate_lb(s));
}
