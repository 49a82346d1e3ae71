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

#include "snc/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace snc {

ArrivalProcess ArrivalProcess::bernoulli(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  return batch({1.0 - lambda, lambda});
}

ArrivalProcess ArrivalProcess::batch(std::vector<double> pmf) {
  if (pmf.empty()) throw std::invalid_argument("empty batch distribution");
  double total = 0.0;
  for (const double q : pmf) {
    if (!(q >= 0.0)) throw std::invalid_argument("batch probabilities must be nonnegative");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("batch pmf must sum to 1");
  ArrivalProcess a;
  a.kind_ = pmf.size() == 2 ? Kind::bernoulli : Kind::batch;
  a.pmf_ = std::move(pmf);
  a.cdf_.resize(a.pmf_.size());
  std::partial_sum(a.pmf_.begin(), a.pmf_.end(), a.cdf_.begin());
  a.cdf_.back() = 1.0;
  return a;
}

ArrivalProcess ArrivalProcess::trace(std::vector<std::uint32_t> counts) {
  ArrivalProcess a;
  a.kind_ = Kind::trace;
  a.trace_ = std::move(counts);
  return a;
}

double ArrivalProcess::rate() const {
  if (kind_ == Kind::trace) {
    if (trace_.empty()) return 0.0;
    const double s = std::accumulate(trace_.begin(), trace_.end(), 0.0);
    return s / static_cast<double>(trace_.size());
  }
  double m = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) m += static_cast<double>(k) * pmf_[k];
  return m;
}

std::uint32_t ArrivalProcess::draw(Engine& eng, std::uint64_t slot) const {
  if (kind_ == Kind::trace) return slot < trace_.size() ? trace_[slot] : 0U;
  const double u = uniform01(eng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                             static_cast<std::ptrdiff_t>(cdf_.size() - 1)));
}

nlohmann::json ArrivalProcess::to_json() const {
  switch (kind_) {
    case Kind::bernoulli:
      return {{"kind", "bernoulli"}, {"lambda", pmf_[1]}};
    case Kind::batch:
      return {{"kind", "batch"}, {"pmf", pmf_}};
    case Kind::trace:
      return {{"kind", "trace"}, {"slots", trace_.size()}, {"rate", rate()}};
  }
  return {};
}

nlohmann::json CurveCheck::to_json() const {
  return {{"holds", holds}, {"worst_start", worst_start}, {"worst_length", worst_length},
          {"worst_count", worst_count}, {"empirical_sigma", empirical_sigma}};
}

CurveCheck check_arrival_curve(std::span<const std::uint32_t> trace, const ArrivalCurve& curve) {
  if (curve.sigma_star < 0.0 || curve.rho_star < 0.0) {
    throw std::invalid_argument("arrival curve parameters must be nonnegative");
  }
  // With D(t) = A(t) - rho t the worst window maximizes D(t) - D(s) over s < t.
  CurveCheck out;
  double d = 0.0;
  double cum = 0.0;
  double min_d = 0.0;
  double cum_at_min = 0.0;
  std::size_t argmin = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= trace.size(); ++t) {
    cum += trace[t - 1];
    d = cum - curve.rho_star * static_cast<double>(t);
    if (d - min_d > best) {
      best = d - min_d;
      out.worst_start = argmin;
      out.worst_length = t - argmin;
      out.worst_count = cum - cum_at_min;
    }
    if (d < min_d) {
      min_d = d;
      argmin = t;
      cum_at_min = cum;
    }
  }
  out.empirical_sigma = trace.empty() ? 0.0 : std::max(0.0, best);
  out.holds = trace.empty() || best <= curve.sigma_star + 1e-12;
  return out;
}

Threshold stability_threshold(const LinkScenario& s, std::optional<double> theta) {
  Threshold out;
  if (s.fading.kind() == FadingModel::Kind::none) {
    const auto nf = no_fading_bounds(s);
    if (nf.degenerate) {
      out.value = kInfinity;
      out.unbounded = true;
      out.note = "interference and noise bounds vanish; no finite threshold";
      return out;
    }
    out.value = nf.rate_lb;
    out.note = "Shannon rate floor in nats per slot";
    return out;
  }
  if (!theta) throw std::invalid_argument("a fading scenario needs an SINR threshold");
  out.value = reliability_lb(s, *theta);
  out.from_zeta = true;
  out.note = "sufficient condition: arrival rate below the per-slot success floor";
  return out;
}

double QueueResult::latency_ccdf(std::uint32_t l) const {
  if (latencies.empty()) return 0.0;
  const auto above = std::count_if(latencies.begin(), latencies.end(),
                                   [l](std::uint32_t x) { return x > l; });
  return static_cast<double>(above) / static_cast<double>(latencies.size());
}

std::uint32_t QueueResult::latency_quantile(double q) const {
  if (latencies.empty()) return 0;
  std::vector<std::uint32_t> v(latencies);
  const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  const auto idx = std::min(k, v.size() - 1);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
  return v[idx];
}

nlohmann::json QueueResult::to_json() const {
  return {{"mean_queue", mean_queue}, {"drift_slope", drift_slope}, {"stable", stable},
          {"packets", latencies.size()}, {"slots", queue_trace.size()},
          {"latency_q90", latency_quantile(0.9)}, {"latency_q99", latency_quantile(0.99)},
          {"warnings", warnings}};
}

QueueResult simulate_geo_queue(const ArrivalProcess& arrivals, double p, std::uint64_t slots,
                               std::uint64_t seed, const QueueOptions& options) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("service probability must lie in [0, 1]");
  if (slots == 0) throw std::invalid_argument("at least one slot is needed");
  QueueResult out;
  if (p == 0.0 && arrivals.rate() > 0.0) {
    out.warnings.emplace_back("zero service probability: the queue cannot drain");
  }
  Engine arr_eng = make_engine(seed, "queue-arrivals");
  Engine svc_eng = make_engine(seed, "queue-service");
  std::deque<std::uint64_t> fifo;
  std::uint64_t hol_start = 0;
  bool hol_set = false;
  double total = 0.0;
  double q2 = 0.0;
  double q4 = 0.0;
  const std::uint64_t quarter = slots / 4;
  if (options.record_trace) out.queue_trace.reserve(slots);
  for (std::uint64_t t = 0; t < slots; ++t) {
    const std::uint32_t a = arrivals.draw(arr_eng, t);
    for (std::uint32_t k = 0; k < a; ++k) fifo.push_back(t);
    if (!fifo.empty()) {
      if (!hol_set) {
        hol_start = t;
        hol_set = true;
      }
      if (uniform01(svc_eng) < p) {
        const std::uint64_t arr = fifo.front();
        fifo.pop_front();
        out.latencies.push_back(static_cast<std::uint32_t>(t - arr + 1));
        if (options.record_events) out.events.push_back({arr, hol_start, t});
        hol_set = false;
      }
    }
    const auto q = static_cast<double>(fifo.size());
    total += q;
    if (t >= quarter && t < 2 * quarter) q2 += q;
    if (t >= 3 * quarter && t < 4 * quarter) q4 += q;
    if (options.record_trace) out.queue_trace.push_back(static_cast<std::uint32_t>(fifo.size()));
  }
  const auto T = static_cast<double>(slots);
  out.mean_queue = total / T;
  if (quarter > 0) {
    const double span = static_cast<double>(quarter);
    out.drift_slope = (q4 / span - q2 / span) / (2.0 * span);
  }
  out.stable = out.drift_slope <= 1.0 / std::sqrt(T);
  return out;
}

QueueChain solve_queue_chain(const ArrivalProcess& arrivals, double p, double tail_tol) {
  if (arrivals.kind() == ArrivalProcess::Kind::trace) {
    throw std::invalid_argument("the chain needs i.i.d. arrivals");
  }
  QueueChain out;
  const auto& a = arrivals.pmf();
  const auto B = static_cast<std::ptrdiff_t>(a.size());
  if (!(arrivals.rate() < p)) {
    out.stable = false;
    return out;
  }
  // P(i -> state > n) for the end-of-slot chain.
  const auto up = [&](std::ptrdiff_t i, std::ptrdiff_t n) {
    double s = 0.0;
    for (std::ptrdiff_t k = 0; k < B; ++k) {
      const std::ptrdiff_t m = i + k;
      if (m == 0) continue;
      if (m - 1 > n) s += a[static_cast<std::size_t>(k)] * p;
      if (m > n) s += a[static_cast<std::size_t>(k)] * (1.0 - p);
    }
    return s;
  };
  const double down = a[0] * p;
  std::vector<double> pi{1.0};
  double total = 1.0;
  constexpr std::size_t kMaxStates = 2'000'000;
  for (std::ptrdiff_t n = 0;; ++n) {
    double flow = 0.0;
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, n - B + 1); i <= n; ++i) {
      flow += pi[static_cast<std::size_t>(i)] * up(i, n);
    }
    if (flow == 0.0) break;
    if (down == 0.0) {
      out.stable = false;
      return out;
    }
    const double next = flow / down;
    pi.push_back(next);
    total += next;
    if (next < tail_tol * total && n > B) break;
    if (pi.size() > kMaxStates) throw std::runtime_error("queue chain did not converge");
  }
  for (auto& v : pi) v /= total;
  out.tail_mass = pi.back();
  for (std::size_t n = 0; n < pi.size(); ++n) out.mean += static_cast<double>(n) * pi[n];
  out.pi = std::move(pi);
  return out;
}

std::vector<double> stationary_latency_ccdf(const ArrivalProcess& arrivals, double p,
                                            std::uint32_t max_latency) {
  const QueueChain chain = solve_queue_chain(arrivals, p);
  if (!chain.stable) throw std::domain_error("queue is not stable");
  const auto& a = arrivals.pmf();
  const double rate = arrivals.rate();
  std::vector<double> ccdf(max_latency + 1, 0.0);
  // Packets ahead within the own batch follow the size-biased position law.
  // Without traffic a tagged packet finds the system empty.
  std::vector<double> pos(a.size(), 0.0);
  pos[0] = 1.0;
  for (std::size_t j = 0; rate > 0.0 && j < a.size(); ++j) {
    double tail = 0.0;
    for (std::size_t k = j + 1; k < a.size(); ++k) tail += a[k];
    pos[j] = tail / rate;
  }
  // K = Q + position + 1 services are needed; tailK[k] = P(K > k).
  std::vector<double> k_pmf(chain.pi.size() + a.size() + 1, 0.0);
  for (std::size_t q = 0; q < chain.pi.size(); ++q) {
    for (std::size_t j = 0; j < pos.size(); ++j) k_pmf[q + j + 1] += chain.pi[q] * pos[j];
  }
  std::vector<double> tail_k(k_pmf.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = k_pmf.size(); k-- > 0;) {
    tail_k[k] = acc;
    acc += k_pmf[k];
  }
  // P(L > l) = sum_k P(Bin(l, p) = k) P(K > k).
  std::vector<double> binom{1.0};
  for (std::uint32_t l = 0; l <= max_latency; ++l) {
    if (l > 0) {
      std::vector<double> next(binom.size() + 1, 0.0);
      for (std::size_t k = 0; k < binom.size(); ++k) {
        next[k] += binom[k] * (1.0 - p);
        next[k + 1] += binom[k] * p;
      }
      binom.swap(next);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < binom.size() && k < tail_k.size(); ++k) s += binom[k] * tail_k[k];
    ccdf[l] = std::clamp(s, 0.0, 1.0);
  }
  return ccdf;
}

std::uint32_t WirelessQueueBound::latency_quantile(double q) const {
  for (std::uint32_t l = 0; l < latency_ccdf.size(); ++l) {
    if (latency_ccdf[l] <= 1.0 - q) return l;
  }
  return static_cast<std::uint32_t>(latency_ccdf.size());
}

nlohmann::json WirelessQueueBound::to_json() const {
  nlohmann::json j = {{"success_probability", success_probability}, {"guaranteed", guaranteed},
                      {"note", note}};
  if (guaranteed) {
    j["mean_queue"] = chain.mean;
    j["latency_q90"] = latency_quantile(0.9);
    j["latency_q99"] = latency_quantile(0.99);
  }
  return j;
}

WirelessQueueBound wireless_queue_bound(const LinkScenario& s, double theta,
                                        const ArrivalProcess& arrivals,
                                        std::uint32_t max_latency) {
  WirelessQueueBound out;
  out.success_probability = reliability_lb(s, theta);
  if (!(out.success_probability > arrivals.rate())) {
    out.note = "no stability guarantee at this threshold";
    return out;
  }
  out.guaranteed = true;
  out.note = "Bernoulli service at the reliability floor dominates every link";
  out.chain = solve_queue_chain(arrivals, out.success_probability);
  out.latency_ccdf = stationary_latency_ccdf(arrivals, out.success_probability, max_latency);
  return out;
}

double tandem_delay_bound(double per_hop_rate_floor, unsigned hops, const ArrivalCurve& curve,
                          double granularity) {
  if (hops == 0) throw std::invalid_argument("at least one hop is needed");
  if (!(curve.rho_star < per_hop_rate_floor)) {
    throw std::invalid_argument("arrival rate must stay below the per-hop rate floor");
  }
  return static_cast<double>(hops) * (curve.sigma_star / per_hop_rate_floor + granularity);
}

}  // namespace snc
