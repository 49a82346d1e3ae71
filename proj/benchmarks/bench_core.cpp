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

#include <benchmark/benchmark.h>

#include <cmath>

#include "snc/bounds.hpp"
#include "snc/hypergeometric.hpp"
#include "snc/montecarlo.hpp"
#include "snc/regulation.hpp"

namespace {

using namespace snc;

void BM_Hyp2f1Kernel(benchmark::State& state) {
  double z = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2f1_kernel(0.5, z));
    z = z < -1e5 ? -0.5 : z * 1.7;
  }
}
BENCHMARK(BM_Hyp2f1Kernel);

void BM_VerifyBallMatern(benchmark::State& state) {
  const Window w(static_cast<double>(state.range(0)));
  const auto p = generate_matern(MaternKind::II, 1.0, 1.0, w, 3);
  const auto ball = hardcore_params(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_ball(p, ball).holds);
  state.counters["points"] = static_cast<double>(p.size());
}
BENCHMARK(BM_VerifyBallMatern)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Zeta(benchmark::State& state) {
  LinkScenario s;
  s.ball = hardcore_params(1.0);
  s.fading = state.range(0) == 0 ? FadingModel::rayleigh() : FadingModel::nakagami(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(zeta(s, 0.1).value);
}
BENCHMARK(BM_Zeta)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_RayleighLink(benchmark::State& state) {
  SimConfig c;
  c.side = 26.0 * std::sqrt(3.0);
  c.image_shells = 1;
  const auto sc = make_realization(c, 0);
  const auto gains = interferer_gains(sc, 0, c.pathloss, c.image_shells);
  for (auto _ : state) {
    RayleighLink link(gains, c.pathloss(c.tau), c.noise);
    benchmark::DoNotOptimize(link.reliability(0.1));
  }
  state.counters["interferers"] = static_cast<double>(gains.size());
}
BENCHMARK(BM_RayleighLink)->Unit(benchmark::kMicrosecond);

void BM_SmallSweep(benchmark::State& state) {
  SimConfig c;
  c.side = 26.0 * std::sqrt(3.0);
  c.image_shells = 1;
  c.links_per_realization = 100;
  for (double db = -20.0; db <= 20.0; db += 5.0) c.theta_db.push_back(db);
  for (auto _ : state) benchmark::DoNotOptimize(min_reliability_sweep(c).links);
}
BENCHMARK(BM_SmallSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
