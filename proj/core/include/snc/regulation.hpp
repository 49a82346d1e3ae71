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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/pathloss.hpp"
#include "snc/pointprocess.hpp"

namespace snc {

/// Ball envelope sigma + rho r + nu r^2.
struct BallParams {
  double sigma = 0.0;
  double rho = 0.0;
  double nu = 0.0;

  double operator()(double r) const noexcept { return sigma + rho * r + nu * r * r; }
  void validate() const;
  nlohmann::json to_json() const;

  friend bool operator==(const BallParams&, const BallParams&) = default;
};

BallParams operator+(const BallParams& a, const BallParams& b);
/// t a + (1 - t) b.
BallParams mix(const BallParams& a, const BallParams& b, double t);

/// Non-decreasing, right-continuous envelope g with g(r) <= coef r^2 for r >= r0.
class GEnvelope {
 public:
  GEnvelope(std::function<double(double)> g, std::vector<double> discontinuities,
            double quadratic_coef, double r0, std::string name);

  static GEnvelope polynomial(const BallParams& p);
  /// Unit-square-lattice style bound pi r^2/a^2 + 2 sqrt(2) r/a + 1.
  static GEnvelope gauss_square(double pitch);
  static GEnvelope zero();

  double operator()(double r) const { return g_(r); }
  const std::vector<double>& discontinuities() const noexcept { return disc_; }
  double quadratic_coef() const noexcept { return coef_; }
  double r0() const noexcept { return r0_; }
  const std::string& name() const noexcept { return name_; }
  nlohmann::json to_json() const;

 private:
  std::function<double(double)> g_;
  std::vector<double> disc_;
  double coef_;
  double r0_;
  std::string name_;
  nlohmann::json extra_;
  friend GEnvelope piecewise_hardcore_envelope(double);
};

struct VoidParams {
  double tau = 0.0;
};

enum class ProbeMode { strong, weak };

/// Where regulation is probed.
///
/// Strong mode probes a square grid of centers plus every point of the
/// pattern. Weak mode probes exactly the observer points. Counts are exact for
/// each center: the sorted neighbor distances are checked against the envelope.
struct ProbeSpec {
  ProbeMode mode = ProbeMode::strong;
  const PointPattern* observer = nullptr;
  /// Grid spacing for strong mode; 0 selects a default from the scale of the check.
  double grid_spacing = 0.0;
  /// Largest radius examined; 0 means half the window side.
  double max_radius = 0.0;
  unsigned threads = 1;

  static ProbeSpec strong(double spacing = 0.0, double max_radius = 0.0);
  static ProbeSpec weak(const PointPattern& observer, double max_radius = 0.0);
};

struct Violation {
  Point center;
  double r = 0.0;
  double count = 0.0;
  double envelope = 0.0;
  double excess() const noexcept { return count - envelope; }
};

struct RegulationVerdict {
  bool holds = true;
  /// Probe with the largest count - envelope (void: largest nearest distance).
  std::optional<Violation> worst_violation;
  std::size_t probes_used = 0;
  std::string mode;
  nlohmann::json params;
  nlohmann::json to_json() const;
};

RegulationVerdict verify_ball(const PointPattern& p, const BallParams& params,
                              const ProbeSpec& probes = {});
RegulationVerdict verify_g_ball(const PointPattern& p, const GEnvelope& g,
                                const ProbeSpec& probes = {});
/// Closed balls of radius tau; strong mode is exact (grid plus circumcenter candidates).
RegulationVerdict verify_void(const PointPattern& p, const VoidParams& params,
                              const ProbeSpec& probes = {});

/// Smallest tau for which the pattern is void regulated (its covering radius).
double covering_radius(const PointPattern& p, double grid_spacing = 0.0);

/// Sum of l(distance) over points within distance R of center, skipping `exclude`.
double shot_noise(const PointPattern& p, const PathLossModel& l, Point center, double R,
                  const std::vector<std::size_t>& exclude = {});

/// sigma l(0) + rho int_0^R l + 2 nu int_0^R r l.
double shot_noise_bound(const BallParams& params, const PathLossModel& l, double R);
/// int_0^R g d(-l) + l(R) g(R), with jumps of l weighted by g at the jump.
double g_shot_noise_bound(const GEnvelope& g, const PathLossModel& l, double R);

BallParams hardcore_params(double hardcore_distance);
GEnvelope piecewise_hardcore_envelope(double hardcore_distance);

/// An indicator path loss whose shot noise exceeds the bound at a violating probe.
struct ShotNoiseWitness {
  Violation at;
  PathLossModel pathloss;
  double shot_noise;
  double bound;
};
std::optional<ShotNoiseWitness> shot_noise_witness(const PointPattern& p,
                                                   const BallParams& params,
                                                   const RegulationVerdict& verdict);

enum class ExtremalMode { nu_c, tau_c, sigma_c };

struct ExtremalParams {
  double sigma_c = 0.0;
  double rho_c = 0.0;
  /// max over probes of N(c, R) / R^2 at the largest radius; at least intensity * pi.
  double nu_c = 0.0;
  /// Smallest nu that works with the sigma and rho caps over radii up to R.
  double nu_capped = 0.0;
  double tau_c = 0.0;
  double intensity = 0.0;
  /// 1/tau_c^2 <= intensity * pi <= nu_c, when both sides were computed.
  std::optional<bool> sandwich_holds;
  nlohmann::json grid;
  nlohmann::json to_json() const;
};

struct ExtremalOptions {
  /// Sigma and rho caps used when minimizing nu; rho_cap 0 selects 2 sqrt(2 * intensity).
  double sigma_cap = 1.0;
  double rho_cap = 0.0;
  double max_radius = 0.0;
  double grid_spacing = 0.0;
};

ExtremalParams estimate_extremal(const std::vector<PointPattern>& ensemble,
                                 const std::vector<ExtremalMode>& modes,
                                 const ExtremalOptions& options = {});

struct CellLoad {
  RegulationVerdict verdict;
  std::vector<std::size_t> loads;
  std::vector<std::size_t> serving;
  std::size_t max_load = 0;
};

/// Nearest-BS association under the torus metric, ties to the lowest BS index.
CellLoad verify_cell_load(const PointPattern& bs, const PointPattern& users, std::size_t K);

}  // namespace snc
