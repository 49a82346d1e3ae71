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

#include "snc/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "snc/random.hpp"

namespace snc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSnap = 1e-9;

}  // namespace

PointPattern::PointPattern(Window window, std::vector<Point> points, PatternInfo info)
    : window_(window), points_(std::move(points)), info_(std::move(info)) {
  for (auto& q : points_) q = window_.wrap(q);
}

PointPattern::PointPattern(Window window, std::vector<Point> points, std::vector<double> marks,
                           PatternInfo info)
    : PointPattern(window, std::move(points), std::move(info)) {
  if (!marks.empty() && marks.size() != points_.size()) {
    throw std::invalid_argument("mark count does not match point count");
  }
  marks_ = std::move(marks);
}

double PointPattern::min_pairwise_distance() const {
  if (points_.size() < 2) return std::numeric_limits<double>::infinity();
  // Start from a radius that typically contains neighbors and widen on failure.
  double radius = std::min(window_.half_side(), 3.0 / std::sqrt(intensity()));
  for (;;) {
    NeighborGrid grid(window_, points_, std::max(radius, window_.side() / 2048.0));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
      grid.for_each_within(points_[i], radius, [&](std::size_t j, double d2) {
        if (j != i) best = std::min(best, d2);
      });
    }
    if (best <= radius * radius || radius >= window_.half_side() * std::numbers::sqrt2) {
      return std::sqrt(best);
    }
    radius = std::min(2.0 * radius, window_.half_side() * std::numbers::sqrt2);
  }
}

PointPattern generate_ppp(double intensity, const Window& window, std::uint64_t seed) {
  if (!(intensity > 0.0)) throw std::invalid_argument("intensity must be positive");
  Engine eng = make_engine(seed, "ppp");
  std::poisson_distribution<std::int64_t> count(intensity * window.area());
  const auto n = static_cast<std::size_t>(count(eng));
  std::vector<Point> pts(n);
  for (auto& q : pts) {
    q.x = uniform01(eng) * window.side();
    q.y = uniform01(eng) * window.side();
  }
  return PointPattern(window, std::move(pts),
                      {"ppp", {{"intensity", intensity}, {"side", window.side()}}, seed});
}

double lattice_pitch(LatticeKind kind, double intensity) {
  if (!(intensity > 0.0)) throw std::invalid_argument("intensity must be positive");
  if (kind == LatticeKind::square) return 1.0 / std::sqrt(intensity);
  return std::sqrt(2.0 / (std::sqrt(3.0) * intensity));
}

double lattice_intensity(LatticeKind kind, double pitch) {
  if (!(pitch > 0.0)) throw std::invalid_argument("pitch must be positive");
  if (kind == LatticeKind::square) return 1.0 / (pitch * pitch);
  return 2.0 / (std::sqrt(3.0) * pitch * pitch);
}

PointPattern generate_lattice_with_pitch(LatticeKind kind, double pitch, const Window& window,
                                         std::uint64_t seed) {
  if (!(pitch > 0.0)) throw std::invalid_argument("pitch must be positive");
  const double side = window.side();
  const auto cols = static_cast<std::size_t>(std::floor(side / pitch + kSnap));
  if (cols < 1) throw std::invalid_argument("lattice pitch exceeds window side");
  const double ax = side / static_cast<double>(cols);
  std::size_t rows = 0;
  double ay = 0.0;
  if (kind == LatticeKind::square) {
    rows = cols;
    ay = ax;
  } else {
    // Triangular rows alternate in offset, so the torus needs an even row count.
    rows = static_cast<std::size_t>(std::floor(side / (pitch * std::sqrt(3.0) / 2.0) + kSnap));
    rows -= rows % 2;
    if (rows < 2) throw std::invalid_argument("lattice pitch exceeds window side");
    ay = side / static_cast<double>(rows);
  }

  Engine eng = make_engine(seed, "lattice-shift");
  const double u = uniform01(eng);
  const double v = uniform01(eng);
  Point shift{u * ax, v * ay};
  if (kind == LatticeKind::triangular) {
    // A fundamental cell of the triangular lattice is spanned by (a,0) and (a/2, row).
    shift = {u * ax + 0.5 * v * ax, v * ay};
  }

  std::vector<Point> pts;
  pts.reserve(rows * cols);
  for (std::size_t j = 0; j < rows; ++j) {
    const double offset = (kind == LatticeKind::triangular && j % 2 == 1) ? 0.5 * ax : 0.0;
    for (std::size_t i = 0; i < cols; ++i) {
      pts.push_back({static_cast<double>(i) * ax + offset + shift.x,
                     static_cast<double>(j) * ay + shift.y});
    }
  }
  const double realized = static_cast<double>(pts.size()) / window.area();
  const double nearest =
      kind == LatticeKind::square ? std::min(ax, ay) : std::min(ax, std::hypot(0.5 * ax, ay));
  nlohmann::json params = {{"kind", kind == LatticeKind::square ? "square" : "triangular"},
                           {"requested_pitch", pitch},
                           {"pitch_x", ax},
                           {"pitch_y", ay},
                           {"nearest_neighbor", nearest},
                           {"intensity", realized},
                           {"side", side}};
  return PointPattern(window, std::move(pts), {"lattice", std::move(params), seed});
}

PointPattern generate_lattice(LatticeKind kind, double intensity, const Window& window,
                              std::uint64_t seed) {
  return generate_lattice_with_pitch(kind, lattice_pitch(kind, intensity), window, seed);
}

PointPattern displace(const PointPattern& p, double max_displacement, std::uint64_t seed) {
  if (!(max_displacement >= 0.0)) throw std::invalid_argument("displacement must be >= 0");
  Engine eng = make_engine(seed, "displace");
  std::vector<Point> pts(p.points().begin(), p.points().end());
  for (auto& q : pts) {
    const double angle = 2.0 * kPi * uniform01(eng);
    const double len = max_displacement * uniform01(eng);
    if (max_displacement > 0.0) {
      q.x += len * std::cos(angle);
      q.y += len * std::sin(angle);
    }
  }
  PatternInfo info = p.info();
  info.params["displacement"] = max_displacement;
  info.params["displacement_seed"] = seed;
  std::vector<double> marks(p.marks().begin(), p.marks().end());
  return PointPattern(p.window(), std::move(pts), std::move(marks), std::move(info));
}

PointPattern generate_perturbed_lattice(const PointPattern& base, double max_displacement,
                                        std::uint64_t seed) {
  PointPattern out = displace(base, max_displacement, seed);
  PatternInfo info = out.info();
  info.generator = "perturbed_" + base.info().generator;
  return PointPattern(out.window(), {out.points().begin(), out.points().end()}, std::move(info));
}

MaternParent generate_matern_parent(double parent_intensity, const Window& window,
                                    std::uint64_t seed) {
  PointPattern parent = generate_ppp(parent_intensity, window, seed);
  Engine eng = make_engine(seed, "matern-marks");
  std::vector<double> marks(parent.size());
  for (auto& m : marks) m = uniform01(eng);
  return {std::move(parent), std::move(marks)};
}

PointPattern thin_matern(const MaternParent& mp, MaternKind kind, double hardcore_distance) {
  if (!(hardcore_distance > 0.0)) throw std::invalid_argument("hardcore distance must be > 0");
  const PointPattern& parent = mp.parent;
  const Window& win = parent.window();
  const double exclusion = 2.0 * hardcore_distance;
  std::vector<Point> kept;
  std::vector<double> kept_marks;
  const bool covers_window = exclusion >= win.half_side() * std::numbers::sqrt2;
  NeighborGrid grid(win, parent.points(), std::min(exclusion, win.side()));
  for (std::size_t i = 0; i < parent.size(); ++i) {
    bool keep = true;
    auto rule = [&](std::size_t j, double d2) {
      if (j == i || d2 >= exclusion * exclusion) return;
      if (kind == MaternKind::I) {
        keep = false;
      } else if (mp.marks[j] < mp.marks[i] || (mp.marks[j] == mp.marks[i] && j < i)) {
        keep = false;
      }
    };
    if (covers_window) {
      for (std::size_t j = 0; j < parent.size(); ++j) rule(j, win.distance_sq(parent[i], parent[j]));
    } else {
      grid.for_each_within(parent[i], exclusion, rule);
    }
    if (keep) {
      kept.push_back(parent[i]);
      kept_marks.push_back(mp.marks[i]);
    }
  }
  PatternInfo info{kind == MaternKind::I ? "matern1" : "matern2",
                   {{"parent_intensity", parent.info().params.value("intensity", 0.0)},
                    {"hardcore_distance", hardcore_distance},
                    {"side", win.side()}},
                   parent.info().seed};
  return PointPattern(win, std::move(kept), std::move(kept_marks), std::move(info));
}

PointPattern generate_matern(MaternKind kind, double parent_intensity, double hardcore_distance,
                             const Window& window, std::uint64_t seed) {
  return thin_matern(generate_matern_parent(parent_intensity, window, seed), kind,
                     hardcore_distance);
}

double matern2_retention(double parent_intensity, double hardcore_distance) {
  const double m = parent_intensity * kPi * 4.0 * hardcore_distance * hardcore_distance;
  return m > 0.0 ? -std::expm1(-m) / m : 1.0;
}

BipolarScenario generate_bipolar(const PointPattern& transmitters, double tau,
                                 std::uint64_t seed) {
  if (!(tau > 0.0)) throw std::invalid_argument("dipole distance must be positive");
  if (tau >= transmitters.window().half_side()) {
    throw std::invalid_argument("dipole distance must be below half the window side");
  }
  Engine eng = make_engine(seed, "bipolar");
  std::vector<Point> rx(transmitters.size());
  std::vector<std::size_t> pairing(transmitters.size());
  for (std::size_t i = 0; i < transmitters.size(); ++i) {
    const double angle = 2.0 * kPi * uniform01(eng);
    rx[i] = {transmitters[i].x + tau * std::cos(angle), transmitters[i].y + tau * std::sin(angle)};
    pairing[i] = i;
  }
  PatternInfo info{"bipolar_receivers", {{"tau", tau}}, seed};
  PointPattern receivers(transmitters.window(), std::move(rx), std::move(info));
  return {transmitters, std::move(receivers), tau, std::move(pairing)};
}

PointPattern superpose(const PointPattern& a, const PointPattern& b) {
  if (!(a.window() == b.window())) throw std::invalid_argument("window mismatch in superpose");
  std::vector<Point> pts(a.points().begin(), a.points().end());
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  std::vector<double> marks;
  if (a.has_marks() && b.has_marks()) {
    marks.assign(a.marks().begin(), a.marks().end());
    marks.insert(marks.end(), b.marks().begin(), b.marks().end());
  }
  PatternInfo info{"superposition", {{"a", a.info().generator}, {"b", b.info().generator}}, 0};
  return PointPattern(a.window(), std::move(pts), std::move(marks), std::move(info));
}

PointPattern thin(const PointPattern& p, const std::function<bool(std::size_t, Point)>& keep) {
  std::vector<Point> pts;
  std::vector<double> marks;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (keep(i, p[i])) {
      pts.push_back(p[i]);
      if (p.has_marks()) marks.push_back(p.marks()[i]);
    }
  }
  PatternInfo info = p.info();
  info.params["thinned"] = true;
  return PointPattern(p.window(), std::move(pts), std::move(marks), std::move(info));
}

PointPattern thin(const PointPattern& p, double keep_probability, std::uint64_t seed) {
  if (!(keep_probability >= 0.0 && keep_probability <= 1.0)) {
    throw std::invalid_argument("keep probability must lie in [0, 1]");
  }
  Engine eng = make_engine(seed, "thin");
  std::vector<char> keep(p.size());
  for (auto& k : keep) k = uniform01(eng) < keep_probability;
  return thin(p, [&](std::size_t i, Point) { return keep[i] != 0; });
}

PointPattern translate(const PointPattern& p, Point shift) {
  std::vector<Point> pts(p.points().begin(), p.points().end());
  for (auto& q : pts) {
    q.x += shift.x;
    q.y += shift.y;
  }
  std::vector<double> marks(p.marks().begin(), p.marks().end());
  PatternInfo info = p.info();
  info.params["translated"] = {shift.x, shift.y};
  return PointPattern(p.window(), std::move(pts), std::move(marks), std::move(info));
}

std::size_t count_in_ball(const PointPattern& p, Point center, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  if (r > p.window().half_side()) {
    throw std::invalid_argument("radius exceeds half the window side");
  }
  const double r2 = r * r;
  std::size_t n = 0;
  for (const auto& q : p.points()) {
    if (p.window().distance_sq(center, q) < r2) ++n;
  }
  return n;
}

}  // namespace snc
