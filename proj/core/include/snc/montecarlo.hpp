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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/fading.hpp"
#include "snc/pathloss.hpp"
#include "snc/pointprocess.hpp"

namespace snc {

/// Transmitter geometry of a simulated network.
struct GeometrySpec {
  /// lattice_triangular | lattice_square | ppp | matern1 | matern2 | perturbed_square
  std::string kind = "lattice_triangular";
  double pitch = 1.7320508075688772;
  double intensity = 1.0;
  double hardcore_distance = 1.0;
  double displacement = 0.0;

  void validate() const;
  nlohmann::json to_json() const;
};

PointPattern generate_geometry(const GeometrySpec& spec, const Window& window, std::uint64_t seed);

struct SimConfig {
  GeometrySpec geometry;
  PathLossModel pathloss = PathLossModel::power_law(4.0);
  FadingModel fading = FadingModel::rayleigh();
  double tau = 1.0;
  double noise = 0.0;
  std::vector<double> theta_db;
  std::size_t realizations = 1;
  /// Links measured per realization; 0 measures every link.
  std::size_t links_per_realization = 0;
  std::uint64_t seed = 1;
  double side = 40.0;
  /// Periodic copies of the window added around the receiver (0 = minimal image only).
  int image_shells = 0;
  unsigned threads = 1;

  void validate() const;
  nlohmann::json to_json() const;
};

/// Realization `index` of a configuration: transmitters and their receivers.
BipolarScenario make_realization(const SimConfig& cfg, std::size_t index);

/// Path loss from every other transmitter (and periodic copies) to receiver `link`.
std::vector<double> interferer_gains(const BipolarScenario& sc, std::size_t link,
                                     const PathLossModel& l, int image_shells = 0);

/// Exact Rayleigh conditional law of one link given its interferer gains.
///
/// Far interferers enter through a truncated power-moment series for log(1 + c g),
/// used only where c g <= 0.02 so that the series error is below 1e-10 relative.
class RayleighLink {
 public:
  RayleighLink(std::vector<double> gains, double signal_gain, double noise);

  double log_reliability(double theta) const;
  double reliability(double theta) const;
  /// int_0^inf P(SINR > e^t - 1) dt in nats.
  double ergodic_rate() const;

 private:
  static constexpr int kMoments = 6;
  std::vector<double> gains_;
  // suffix_[k * kMoments + j] = sum_{i >= k} gains_[i]^(j+1)
  std::vector<double> suffix_;
  double signal_;
  double noise_;
};

enum class ReliabilityMethod { exact_rayleigh, monte_carlo };

double conditional_reliability(const BipolarScenario& sc, std::size_t link, double theta,
                               const FadingModel& fading, double noise, const PathLossModel& l,
                               ReliabilityMethod method, std::size_t n_fading = 0,
                               std::uint64_t seed = 0, int image_shells = 0);

/// Monte Carlo estimate with its standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};
Estimate conditional_reliability_mc(const BipolarScenario& sc, std::size_t link, double theta,
                                    const FadingModel& fading, double noise,
                                    const PathLossModel& l, std::size_t n_fading,
                                    std::uint64_t seed, int image_shells = 0);
Estimate conditional_ergodic_rate_mc(const BipolarScenario& sc, std::size_t link,
                                     const FadingModel& fading, double noise,
                                     const PathLossModel& l, std::size_t n_fading,
                                     std::uint64_t seed, int image_shells = 0);

struct SweepRow {
  double theta_db;
  double min;
  double q01;
  double median;
  double mean;
};

struct ReliabilitySweep {
  std::vector<SweepRow> rows;
  std::size_t links = 0;
  nlohmann::json to_json() const;
};
ReliabilitySweep min_reliability_sweep(const SimConfig& cfg);

struct RateSamples {
  std::vector<double> rates;
  double min = 0.0;
  double mean = 0.0;
  std::size_t links = 0;
};
/// Per-link conditional ergodic rates; Rayleigh uses the exact CCDF, others Monte Carlo.
RateSamples ergodic_rate_samples(const SimConfig& cfg, std::size_t n_fading = 2000);

struct TailPoint {
  double x;
  double ccdf;
};
/// Empirical CCDF of the interference at receivers, one fading draw per sample.
std::vector<TailPoint> interference_tail(const SimConfig& cfg, const std::vector<double>& x_grid,
                                         std::size_t samples);

/// Link-level success probabilities (Rayleigh exact) for every link of a realization.
std::vector<double> link_reliabilities(const SimConfig& cfg, std::size_t realization,
                                       double theta);

}  // namespace snc
