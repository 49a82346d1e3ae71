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

#include "snc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace snc {

Window::Window(double side) : side_(side) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw std::invalid_argument("window side must be positive and finite");
  }
}

double Window::wrap_coordinate(double v) const noexcept {
  double w = v - side_ * std::floor(v / side_);
  if (w >= side_ || w < 0.0) w = 0.0;
  return w;
}

Point Window::wrap(Point p) const noexcept { return {wrap_coordinate(p.x), wrap_coordinate(p.y)}; }

double Window::delta(double d) const noexcept {
  d -= side_ * std::round(d / side_);
  return d;
}

Point Window::displacement(Point from, Point to) const noexcept {
  return {delta(to.x - from.x), delta(to.y - from.y)};
}

double Window::distance_sq(Point a, Point b) const noexcept {
  const double dx = delta(b.x - a.x);
  const double dy = delta(b.y - a.y);
  return dx * dx + dy * dy;
}

double Window::distance(Point a, Point b) const noexcept { return std::sqrt(distance_sq(a, b)); }

bool Window::contains(Point p) const noexcept {
  return p.x >= 0.0 && p.x < side_ && p.y >= 0.0 && p.y < side_;
}

NeighborGrid::NeighborGrid(const Window& window, std::span<const Point> points, double cell_size)
    : window_(window), points_(points) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell size must be positive");
  const double per_side = std::floor(window.side() / cell_size);
  cells_ = static_cast<std::size_t>(std::clamp(per_side, 1.0, 2048.0));
  cell_width_ = window.side() / static_cast<double>(cells_);

  std::vector<std::size_t> cell_index(points.size());
  offsets_.assign(cells_ * cells_ + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point p = window.wrap(points[i]);
    cell_index[i] = cell_of(p.y) * cells_ + cell_of(p.x);
    ++offsets_[cell_index[i] + 1];
  }
  for (std::size_t c = 0; c < cells_ * cells_; ++c) offsets_[c + 1] += offsets_[c];
  members_.resize(points.size());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    members_[fill[cell_index[i]]++] = static_cast<std::uint32_t>(i);
  }
}

std::size_t NeighborGrid::cell_of(double coordinate) const noexcept {
  const double wrapped = coordinate - window_.side() * std::floor(coordinate / window_.side());
  auto c = static_cast<std::size_t>(wrapped / cell_width_);
  return std::min(c, cells_ - 1);
}

std::optional<std::pair<std::size_t, double>> NeighborGrid::nearest(Point center) const {
  if (points_.empty()) return std::nullopt;
  const double max_radius = window_.side() * std::sqrt(0.5);
  double radius = cell_width_;
  for (;;) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for_each_within(center, radius, [&](std::size_t idx, double d2) {
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best = idx;
        best_d2 = d2;
      }
    });
    if (best_d2 <= radius * radius || radius >= max_radius) {
      return std::make_pair(best, std::sqrt(best_d2));
    }
    radius = std::min(2.0 * radius, max_radius);
  }
}

}  // namespace snc
