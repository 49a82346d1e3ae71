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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/bounds.hpp"
#include "snc/fading.hpp"
#include "snc/pathloss.hpp"
#include "snc/pointprocess.hpp"

namespace snc {

struct GraphEdge {
  std::size_t a;
  std::size_t b;
  double sinr_ab;
  double sinr_ba;
};

/// Undirected graph with an edge where both directed SINRs exceed theta.
struct SinrGraph {
  std::size_t nodes = 0;
  double theta = 0.0;
  bool fading = false;
  std::uint64_t seed = 0;
  std::vector<GraphEdge> edges;  // a < b, sorted

  bool has_edge(std::size_t a, std::size_t b) const;
  std::vector<std::vector<std::size_t>> adjacency() const;
  nlohmann::json to_json() const;
};

/// Fading mode freezes one draw per ordered pair; row y uses its own seeded stream.
SinrGraph build_sinr_graph(const PointPattern& p, double theta, const PathLossModel& l,
                           double noise, const FadingModel& fading = FadingModel::none(),
                           std::uint64_t seed = 0, unsigned threads = 1);

/// Same graph for many thresholds with a single set of fading draws.
std::vector<SinrGraph> build_sinr_graphs(const PointPattern& p, const std::vector<double>& thetas,
                                         const PathLossModel& l, double noise,
                                         const FadingModel& fading, std::uint64_t seed,
                                         unsigned threads = 1);

class BackboneError : public std::runtime_error {
 public:
  enum class Kind { empty_ball, not_void_regulated };
  BackboneError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct Backbone {
  double tau = 0.0;
  std::size_t grid_x = 0;
  std::size_t grid_y = 0;
  bool periodic = false;
  /// representative[j * grid_x + i] is the node chosen in B((2 i tau, 2 j tau), tau).
  std::vector<std::size_t> representative;
  std::vector<std::pair<std::size_t, std::size_t>> neighbor_pairs;  // grid cell indices
  std::vector<char> connected;                                      // per neighbor pair
  double connected_fraction = 0.0;
  nlohmann::json to_json(const PointPattern& p) const;
};

/// Picks the largest-abscissa point of each closed ball (ties: largest ordinate).
/// Throws BackboneError on an empty ball, or when void verification fails.
Backbone extract_backbone(const PointPattern& p, double tau, const SinrGraph* graph,
                          bool verify_void_first = true);

struct PercolationMetrics {
  double largest_component_fraction = 0.0;
  std::size_t components = 0;
  std::optional<double> neighbor_edge_probability;
  nlohmann::json to_json() const;
};
/// With a backbone, also the fraction of its grid-neighbor pairs linked in `g`.
PercolationMetrics percolation_metrics(const SinrGraph& g, const Backbone* backbone = nullptr);

/// SINR floor ell(4 tau) / (A_l + W) below which every backbone neighbor pair is linked.
double backbone_sinr_floor(const BallParams& ball, const PathLossModel& l, double tau,
                           double noise);

struct CellularFloor {
  double rate_floor = 0.0;
  double sinr_floor = 0.0;
  std::size_t K = 0;
  double tau = 0.0;
  nlohmann::json to_json() const;
};
/// (1/K) log(1 + l(tau)/(A_l - l(tau) + W)); verifies cell load and coverage first.
CellularFloor cellular_rate_floor(const PointPattern& bs, const PointPattern& users,
                                  std::size_t K, const LinkScenario& s);

struct CellularRates {
  std::vector<double> sinr;
  std::vector<double> rate;  // share-adjusted, nats
  std::vector<std::size_t> serving;
  std::size_t max_load = 0;
};
/// No-fading downlink rates with equal sharing among users of the same cell.
CellularRates simulate_cellular_rates(const PointPattern& bs, const PointPattern& users,
                                      const PathLossModel& l, double noise);

}  // namespace snc
