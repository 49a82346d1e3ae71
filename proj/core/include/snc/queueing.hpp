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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/bounds.hpp"
#include "snc/random.hpp"

namespace snc {

/// Per-slot packet arrivals: Bernoulli(lambda), i.i.d. batches, or a fixed trace.
class ArrivalProcess {
 public:
  enum class Kind { bernoulli, batch, trace };

  static ArrivalProcess bernoulli(double lambda);
  /// pmf[k] = P(k packets in a slot).
  static ArrivalProcess batch(std::vector<double> pmf);
  static ArrivalProcess trace(std::vector<std::uint32_t> counts);

  Kind kind() const noexcept { return kind_; }
  /// Mean packets per slot.
  double rate() const;
  /// Batch-size distribution; a trace has none.
  const std::vector<double>& pmf() const noexcept { return pmf_; }
  std::uint32_t draw(Engine& eng, std::uint64_t slot) const;
  nlohmann::json to_json() const;

 private:
  Kind kind_ = Kind::bernoulli;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  std::vector<std::uint32_t> trace_;
};

struct ArrivalCurve {
  double sigma_star = 0.0;
  double rho_star = 0.0;
};

struct CurveCheck {
  bool holds = true;
  /// Window [start, start + length) maximizing count - rho length.
  std::size_t worst_start = 0;
  std::size_t worst_length = 0;
  double worst_count = 0.0;
  /// Smallest sigma that makes the trace conform at the given rho.
  double empirical_sigma = 0.0;
  nlohmann::json to_json() const;
};

/// Exact test of A[s, t) <= sigma + rho (t - s) over all windows, linear time.
CurveCheck check_arrival_curve(std::span<const std::uint32_t> trace, const ArrivalCurve& curve);

struct Threshold {
  double value = 0.0;
  bool unbounded = false;
  /// True when the value is a per-slot success probability rather than a Shannon floor.
  bool from_zeta = false;
  std::string note;
};
/// log(1 + SINR floor) without fading; under fading the reliability floor at theta.
Threshold stability_threshold(const LinkScenario& s, std::optional<double> theta = std::nullopt);

struct PacketEvent {
  std::uint64_t arrival;
  std::uint64_t start;
  std::uint64_t departure;
};

struct QueueResult {
  std::vector<std::uint32_t> queue_trace;
  std::vector<std::uint32_t> latencies;
  std::vector<PacketEvent> events;
  double mean_queue = 0.0;
  double drift_slope = 0.0;
  bool stable = true;
  std::vector<std::string> warnings;

  double latency_ccdf(std::uint32_t l) const;
  std::uint32_t latency_quantile(double q) const;
  nlohmann::json to_json() const;
};

struct QueueOptions {
  bool record_events = false;
  bool record_trace = true;
};

/// FIFO infinite buffer; in each slot arrivals join first, then the head of line
/// leaves with probability p. Latency counts the arrival slot, so it is at least 1.
QueueResult simulate_geo_queue(const ArrivalProcess& arrivals, double p, std::uint64_t slots,
                               std::uint64_t seed, const QueueOptions& options = {});

/// Stationary law of the end-of-slot queue length under the same convention.
struct QueueChain {
  std::vector<double> pi;
  double mean = 0.0;
  double tail_mass = 0.0;
  bool stable = true;
};
QueueChain solve_queue_chain(const ArrivalProcess& arrivals, double p, double tail_tol = 1e-14);

/// P(latency > l) for l = 0 .. max_latency under the stationary chain.
std::vector<double> stationary_latency_ccdf(const ArrivalProcess& arrivals, double p,
                                            std::uint32_t max_latency);

struct WirelessQueueBound {
  double success_probability = 0.0;
  bool guaranteed = false;
  std::string note;
  QueueChain chain;
  std::vector<double> latency_ccdf;
  std::uint32_t latency_quantile(double q) const;
  nlohmann::json to_json() const;
};
/// Dominating queue with Bernoulli service at the reliability floor for threshold theta.
WirelessQueueBound wireless_queue_bound(const LinkScenario& s, double theta,
                                        const ArrivalProcess& arrivals,
                                        std::uint32_t max_latency = 4096);

/// hops * (sigma / rate_floor + granularity) for constant-rate servers in series.
double tandem_delay_bound(double per_hop_rate_floor, unsigned hops, const ArrivalCurve& curve,
                          double granularity = 0.0);

}  // namespace snc
