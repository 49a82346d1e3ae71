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

#include "snc/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "snc/parallel.hpp"
#include "snc/random.hpp"
#include "snc/regulation.hpp"

namespace snc {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// received[y * n + x] = h_xy l(d_xy); total[y] = sum over x != y.
struct ReceivedPower {
  std::size_t n;
  std::vector<double> received;
  std::vector<double> total;
};

ReceivedPower received_power(const PointPattern& p, const PathLossModel& l,
                             const FadingModel& fading, std::uint64_t seed, unsigned threads) {
  const std::size_t n = p.size();
  ReceivedPower rp{n, std::vector<double>(n * n, 0.0), std::vector<double>(n, 0.0)};
  parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t y = b; y < e; ++y) {
      Engine eng = make_engine(seed, "graph-fading", y);
      double s = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        const double h = fading.sample(eng);
        if (x == y) continue;
        const double v = h * l(p.window().distance(p[x], p[y]));
        rp.received[y * n + x] = v;
        s += v;
      }
      rp.total[y] = s;
    }
  });
  return rp;
}

SinrGraph graph_from(const ReceivedPower& rp, double theta, double noise, bool fading,
                     std::uint64_t seed) {
  SinrGraph g;
  g.nodes = rp.n;
  g.theta = theta;
  g.fading = fading;
  g.seed = seed;
  const std::size_t n = rp.n;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double s_ab = rp.received[b * n + a];
      const double s_ba = rp.received[a * n + b];
      // Cheap rejection: the signal alone must beat theta times the noise.
      if (s_ab <= theta * noise || s_ba <= theta * noise) continue;
      const double sinr_ab = s_ab / (rp.total[b] - s_ab + noise);
      if (!(sinr_ab > theta)) continue;
      const double sinr_ba = s_ba / (rp.total[a] - s_ba + noise);
      if (!(sinr_ba > theta)) continue;
      g.edges.push_back({a, b, sinr_ab, sinr_ba});
    }
  }
  return g;
}

}  // namespace

bool SinrGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  const auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(a, b),
                                   [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& k) {
                                     return std::tie(e.a, e.b) < std::tie(k.first, k.second);
                                   });
  return it != edges.end() && it->a == a && it->b == b;
}

std::vector<std::vector<std::size_t>> SinrGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

nlohmann::json SinrGraph::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : edges) list.push_back({e.a, e.b, e.sinr_ab, e.sinr_ba});
  return {{"nodes", nodes}, {"theta", theta}, {"fading", fading}, {"seed", seed},
          {"edges", list}};
}

SinrGraph build_sinr_graph(const PointPattern& p, double theta, const PathLossModel& l,
                           double noise, const FadingModel& fading, std::uint64_t seed,
                           unsigned threads) {
  return build_sinr_graphs(p, {theta}, l, noise, fading, seed, threads).front();
}

std::vector<SinrGraph> build_sinr_graphs(const PointPattern& p, const std::vector<double>& thetas,
                                         const PathLossModel& l, double noise,
                                         const FadingModel& fading, std::uint64_t seed,
                                         unsigned threads) {
  if (p.empty()) throw std::invalid_argument("SINR graph needs at least one node");
  if (!(noise >= 0.0)) throw std::invalid_argument("noise must be nonnegative");
  const bool faded = fading.kind() != FadingModel::Kind::none;
  const ReceivedPower rp = received_power(p, l, fading, seed, threads);
  std::vector<SinrGraph> out;
  for (const double t : thetas) out.push_back(graph_from(rp, t, noise, faded, seed));
  return out;
}

nlohmann::json Backbone::to_json(const PointPattern& p) const {
  nlohmann::json reps = nlohmann::json::array();
  for (std::size_t j = 0; j < grid_y; ++j) {
    for (std::size_t i = 0; i < grid_x; ++i) {
      const std::size_t r = representative[j * grid_x + i];
      reps.push_back({{"i", i}, {"j", j}, {"node", r}, {"x", p[r].x}, {"y", p[r].y}});
    }
  }
  return {{"tau", tau}, {"grid_x", grid_x}, {"grid_y", grid_y}, {"periodic", periodic},
          {"connected_fraction", connected_fraction}, {"representatives", reps}};
}

Backbone extract_backbone(const PointPattern& p, double tau, const SinrGraph* graph,
                          bool verify_void_first) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const Window& w = p.window();
  Backbone bb;
  bb.tau = tau;
  const double pitch = 2.0 * tau;
  const auto n = static_cast<std::size_t>(std::floor(w.side() / pitch + 1e-9));
  if (n < 2) throw std::invalid_argument("window too small for a backbone grid");
  bb.grid_x = n;
  bb.grid_y = n;
  bb.periodic = std::abs(static_cast<double>(n) * pitch - w.side()) < 1e-9 * w.side();
  bb.representative.assign(n * n, 0);

  const NeighborGrid grid(w, p.points(), tau);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Point c{static_cast<double>(i) * pitch, static_cast<double>(j) * pitch};
      bool found = false;
      Point best{};
      std::size_t best_idx = 0;
      grid.for_each_within(c, tau, [&](std::size_t idx, double) {
        const Point d = w.displacement(c, p[idx]);
        if (!found || d.x > best.x || (d.x == best.x && d.y > best.y) ||
            (d.x == best.x && d.y == best.y && idx < best_idx)) {
          best = d;
          best_idx = idx;
          found = true;
        }
      });
      if (!found) {
        throw BackboneError(BackboneError::Kind::empty_ball,
                            "empty ball at grid cell (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
      bb.representative[j * n + i] = best_idx;
    }
  }
  if (verify_void_first) {
    const auto verdict = verify_void(p, {tau});
    if (!verdict.holds) {
      throw BackboneError(BackboneError::Kind::not_void_regulated,
                          "pattern is not void regulated at the backbone radius");
    }
  }
  const std::size_t limit = bb.periodic ? n : n - 1;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i < limit) bb.neighbor_pairs.emplace_back(j * n + i, j * n + (i + 1) % n);
      if (j < limit) bb.neighbor_pairs.emplace_back(j * n + i, ((j + 1) % n) * n + i);
    }
  }
  if (graph != nullptr) {
    std::size_t ok = 0;
    for (const auto& [c1, c2] : bb.neighbor_pairs) {
      const std::size_t a = bb.representative[c1];
      const std::size_t b = bb.representative[c2];
      const bool linked = a == b || graph->has_edge(a, b);
      bb.connected.push_back(linked ? 1 : 0);
      ok += linked ? 1 : 0;
    }
    bb.connected_fraction =
        bb.neighbor_pairs.empty() ? 1.0
                                  : static_cast<double>(ok) / static_cast<double>(bb.neighbor_pairs.size());
  }
  return bb;
}

nlohmann::json PercolationMetrics::to_json() const {
  nlohmann::json j = {{"largest_component_fraction", largest_component_fraction},
                      {"components", components}};
  j["neighbor_edge_probability"] =
      neighbor_edge_probability ? nlohmann::json(*neighbor_edge_probability) : nlohmann::json();
  return j;
}

PercolationMetrics percolation_metrics(const SinrGraph& g, const Backbone* backbone) {
  PercolationMetrics m;
  if (g.nodes == 0) return m;
  DisjointSets ds(g.nodes);
  for (const auto& e : g.edges) ds.unite(e.a, e.b);
  std::size_t largest = 0;
  for (std::size_t v = 0; v < g.nodes; ++v) {
    if (ds.find(v) == v) ++m.components;
    largest = std::max(largest, ds.size_of(v));
  }
  m.largest_component_fraction = static_cast<double>(largest) / static_cast<double>(g.nodes);
  if (backbone != nullptr && !backbone->neighbor_pairs.empty()) {
    std::size_t open = 0;
    for (const auto& [u, v] : backbone->neighbor_pairs) {
      open += g.has_edge(backbone->representative[u], backbone->representative[v]) ? 1 : 0;
    }
    m.neighbor_edge_probability =
        static_cast<double>(open) / static_cast<double>(backbone->neighbor_pairs.size());
  }
  return m;
}

double backbone_sinr_floor(const BallParams& ball, const PathLossModel& l, double tau,
                           double noise) {
  return l(4.0 * tau) / (a_ell(ball, l) + noise);
}

nlohmann::json CellularFloor::to_json() const {
  return {{"rate_floor", rate_floor}, {"sinr_floor", sinr_floor}, {"K", K}, {"tau", tau}};
}

CellularFloor cellular_rate_floor(const PointPattern& bs, const PointPattern& users,
                                  std::size_t K, const LinkScenario& s) {
  if (K == 0) throw std::invalid_argument("K must be positive");
  const CellLoad load = verify_cell_load(bs, users, K);
  if (!load.verdict.holds) throw std::invalid_argument("cell load exceeds K");
  if (!users.empty()) {
    const auto cover = verify_void(bs, {s.tau}, ProbeSpec::weak(users));
    if (!cover.holds) {
      throw std::invalid_argument("some user is farther than tau from every base station");
    }
  }
  const auto nf = no_fading_bounds(s);
  if (nf.degenerate) throw std::domain_error("degenerate interference bound");
  CellularFloor out;
  out.K = K;
  out.tau = s.tau;
  out.sinr_floor = nf.sinr_lb;
  out.rate_floor = nf.rate_lb / static_cast<double>(K);
  return out;
}

CellularRates simulate_cellular_rates(const PointPattern& bs, const PointPattern& users,
                                      const PathLossModel& l, double noise) {
  const CellLoad load = verify_cell_load(bs, users, users.size());
  CellularRates out;
  out.serving = load.serving;
  out.max_load = load.max_load;
  for (std::size_t u = 0; u < users.size(); ++u) {
    double total = 0.0;
    for (std::size_t b = 0; b < bs.size(); ++b) total += l(bs.window().distance(bs[b], users[u]));
    const double signal = l(bs.window().distance(bs[out.serving[u]], users[u]));
    const double sinr = signal / (total - signal + noise);
    out.sinr.push_back(sinr);
    out.rate.push_back(std::log1p(sinr) / static_cast<double>(load.loads[out.serving[u]]));
  }
  return out;
}

}  // namespace snc
