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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/geometry.hpp"

namespace snc {

/// Provenance carried with every generated pattern.
struct PatternInfo {
  std::string generator;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
};

/// Finite point configuration on a toroidal window with optional marks.
class PointPattern {
 public:
  PointPattern(Window window, std::vector<Point> points, PatternInfo info = {});
  PointPattern(Window window, std::vector<Point> points, std::vector<double> marks,
               PatternInfo info = {});

  const Window& window() const noexcept { return window_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::span<const double> marks() const noexcept { return marks_; }
  bool has_marks() const noexcept { return !marks_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const PatternInfo& info() const noexcept { return info_; }

  double intensity() const noexcept { return static_cast<double>(size()) / window_.area(); }

  /// Smallest torus distance between two distinct points (infinity if fewer than two).
  double min_pairwise_distance() const;

  friend bool operator==(const PointPattern& a, const PointPattern& b) {
    return a.window_ == b.window_ && a.points_ == b.points_ && a.marks_ == b.marks_;
  }

 private:
  Window window_;
  std::vector<Point> points_;
  std::vector<double> marks_;
  PatternInfo info_;
};

struct BipolarScenario {
  PointPattern transmitters;
  PointPattern receivers;
  double tau;
  /// receivers[pairing[i]] is the dedicated receiver of transmitters[i].
  std::vector<std::size_t> pairing;
};

enum class LatticeKind { square, triangular };
enum class MaternKind { I, II };

PointPattern generate_ppp(double intensity, const Window& window, std::uint64_t seed);

/// Pitch (nearest-neighbor distance) of a lattice with the given intensity.
double lattice_pitch(LatticeKind kind, double intensity);
double lattice_intensity(LatticeKind kind, double pitch);

/// Stationary lattice: snapped to the torus, then shifted uniformly in one cell.
///
/// The snapped pitches never fall below the requested one. Metadata records
/// `pitch_x`, `pitch_y` and the realized intensity.
PointPattern generate_lattice(LatticeKind kind, double intensity, const Window& window,
                              std::uint64_t seed);
PointPattern generate_lattice_with_pitch(LatticeKind kind, double pitch, const Window& window,
                                         std::uint64_t seed);

/// Each point moves by an independent vector of uniform angle and length U[0, D].
PointPattern generate_perturbed_lattice(const PointPattern& base, double max_displacement,
                                        std::uint64_t seed);
PointPattern displace(const PointPattern& p, double max_displacement, std::uint64_t seed);

/// Parent Poisson process with i.i.d. uniform marks, retained under the
/// type I or type II rule with exclusion distance 2H.
struct MaternParent {
  PointPattern parent;
  std::vector<double> marks;
};
MaternParent generate_matern_parent(double parent_intensity, const Window& window,
                                    std::uint64_t seed);
PointPattern thin_matern(const MaternParent& parent, MaternKind kind, double hardcore_distance);
PointPattern generate_matern(MaternKind kind, double parent_intensity, double hardcore_distance,
                             const Window& window, std::uint64_t seed);

/// Matérn II retention probability on the plane.
double matern2_retention(double parent_intensity, double hardcore_distance);

BipolarScenario generate_bipolar(const PointPattern& transmitters, double tau,
                                 std::uint64_t seed);

PointPattern superpose(const PointPattern& a, const PointPattern& b);
PointPattern thin(const PointPattern& p, double keep_probability, std::uint64_t seed);
PointPattern thin(const PointPattern& p, const std::function<bool(std::size_t, Point)>& keep);
PointPattern translate(const PointPattern& p, Point shift);

/// Number of points at torus distance strictly less than r.
std::size_t count_in_ball(const PointPattern& p, Point center, double r);

}  // namespace snc
