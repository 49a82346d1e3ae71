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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace snc {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Square observation window with periodic (toroidal) boundary.
///
/// All distances are minimal-image distances, which turns a finite window
/// into a stand-in for the stationary plane without edge effects.
class Window {
 public:
  explicit Window(double side);

  double side() const noexcept { return side_; }
  double half_side() const noexcept { return 0.5 * side_; }
  double area() const noexcept { return side_ * side_; }

  /// Maps an arbitrary point into [0, side)^2.
  Point wrap(Point p) const noexcept;

  /// Minimal-image displacement vector pointing from `from` to `to`.
  Point displacement(Point from, Point to) const noexcept;

  double distance_sq(Point a, Point b) const noexcept;
  double distance(Point a, Point b) const noexcept;

  bool contains(Point p) const noexcept;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double wrap_coordinate(double v) const noexcept;
  double delta(double d) const noexcept;

  double side_;
};

/// Uniform cell list over a torus for fixed-radius neighbor queries.
class NeighborGrid {
 public:
  NeighborGrid(const Window& window, std::span<const Point> points, double cell_size);

  /// Calls `visit(index, distance_sq)` for every point with torus distance <= radius.
  template <class Visitor>
  void for_each_within(Point center, double radius, Visitor&& visit) const;

  /// Index and distance of the nearest point, lowest index on ties.
  std::optional<std::pair<std::size_t, double>> nearest(Point center) const;

  std::size_t cells_per_side() const noexcept { return cells_; }

 private:
  std::size_t cell_of(double coordinate) const noexcept;

  Window window_;
  std::span<const Point> points_;
  std::size_t cells_;
  double cell_width_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> members_;
};

template <class Visitor>
void NeighborGrid::for_each_within(Point center, double radius, Visitor&& visit) const {
  const double r2 = radius * radius;
  const auto n = static_cast<std::ptrdiff_t>(cells_);
  const auto reach = static_cast<std::ptrdiff_t>(radius / cell_width_) + 1;
  const bool all = 2 * reach + 1 >= n;
  const auto cx = static_cast<std::ptrdiff_t>(cell_of(center.x));
  const auto cy = static_cast<std::ptrdiff_t>(cell_of(center.y));
  const std::ptrdiff_t lo = all ? 0 : -reach;
  const std::ptrdiff_t hi = all ? n - 1 : reach;
  for (std::ptrdiff_t dy = lo; dy <= hi; ++dy) {
    const std::ptrdiff_t iy = all ? dy : ((cy + dy) % n + n) % n;
    for (std::ptrdiff_t dx = lo; dx <= hi; ++dx) {
      const std::ptrdiff_t ix = all ? dx : ((cx + dx) % n + n) % n;
      const auto cell = static_cast<std::size_t>(iy * n + ix);
      for (std::uint32_t k = offsets_[cell]; k < offsets_[cell + 1]; ++k) {
        const std::size_t idx = members_[k];
        const double d2 = window_.distance_sq(center, points_[idx]);
        if (d2 <= r2) visit(idx, d2);
      }
    }
  }
}

}  // namespace snc
