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

#include "snc/regulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "snc/parallel.hpp"
#include "snc/quadrature.hpp"

namespace snc {
namespace {

constexpr double kPackingFraction = std::numbers::pi / 1.7320508075688772 / 2.0;  // pi/sqrt(12)

std::vector<Point> grid_probes(const Window& w, double spacing) {
  const auto n = static_cast<std::size_t>(std::ceil(w.side() / spacing));
  const double step = w.side() / static_cast<double>(n);
  std::vector<Point> out;
  out.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({(static_cast<double>(i) + 0.5) * step, (static_cast<double>(j) + 0.5) * step});
    }
  }
  return out;
}

std::vector<Point> probe_centers(const PointPattern& p, const ProbeSpec& spec,
                                 double default_spacing) {
  if (spec.mode == ProbeMode::weak) {
    if (spec.observer == nullptr) throw std::invalid_argument("weak mode needs an observer");
    if (!(spec.observer->window() == p.window())) {
      throw std::invalid_argument("observer window differs from pattern window");
    }
    return {spec.observer->points().begin(), spec.observer->points().end()};
  }
  const double spacing = spec.grid_spacing > 0.0 ? spec.grid_spacing : default_spacing;
  std::vector<Point> out = grid_probes(p.window(), spacing);
  out.insert(out.end(), p.points().begin(), p.points().end());
  return out;
}

double resolve_radius(const PointPattern& p, double requested) {
  const double half = p.window().half_side();
  if (requested > half * (1.0 + 1e-12)) {
    throw std::invalid_argument("probe radius exceeds half the window side");
  }
  return requested > 0.0 ? std::min(requested, half) : half;
}

double default_ball_spacing(const PointPattern& p) {
  const double lambda = std::max(p.intensity(), 1.0 / p.window().area());
  return 0.125 / std::sqrt(lambda);
}

const char* mode_name(ProbeMode m) { return m == ProbeMode::strong ? "strong" : "weak"; }

struct Best {
  bool found = false;
  Violation v;
  void offer(const Violation& c) {
    if (!found || c.excess() > v.excess()) {
      v = c;
      found = true;
    }
  }
};

// Exact per-center check: for each center the k-th nearest distance d_k must
// satisfy k <= g(d_k). Returns the probe with the largest excess.
template <class Envelope>
Best envelope_scan(const PointPattern& p, const std::vector<Point>& centers, double radius,
                   const Envelope& g, unsigned threads) {
  const NeighborGrid grid(p.window(), p.points(), radius);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(64, centers.size()));
  std::vector<Best> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t cb, std::size_t ce) {
    std::vector<double> d2;
    for (std::size_t c = cb; c < ce; ++c) {
      const std::size_t lo = c * centers.size() / chunks;
      const std::size_t hi = (c + 1) * centers.size() / chunks;
      Best best;
      for (std::size_t i = lo; i < hi; ++i) {
        d2.clear();
        grid.for_each_within(centers[i], radius, [&](std::size_t, double s) { d2.push_back(s); });
        std::sort(d2.begin(), d2.end());
        if (d2.empty()) {
          best.offer({centers[i], 0.0, 0.0, g(0.0)});
          continue;
        }
        for (std::size_t k = 0; k < d2.size(); ++k) {
          // Ties share a distance; only the last of a run binds.
          if (k + 1 < d2.size() && d2[k + 1] == d2[k]) continue;
          const double d = std::sqrt(d2[k]);
          best.offer({centers[i], d, static_cast<double>(k + 1), g(d)});
        }
      }
      partial[c] = best;
    }
  });
  Best total;
  for (const auto& b : partial) {
    if (b.found) total.offer(b.v);
  }
  return total;
}

RegulationVerdict envelope_verdict(const Best& best, std::size_t probes, ProbeMode mode,
                                   nlohmann::json params) {
  RegulationVerdict out;
  out.probes_used = probes;
  out.mode = mode_name(mode);
  out.params = std::move(params);
  if (best.found) {
    out.worst_violation = best.v;
    out.holds = best.v.count <= best.v.envelope;
  }
  return out;
}

// Distance from c to the nearest pattern point, or +inf for an empty pattern.
double nearest_distance(const NeighborGrid& grid, Point c) {
  const auto n = grid.nearest(c);
  return n ? n->second : std::numeric_limits<double>::infinity();
}

// Circumcenters of all triples whose pairwise distances are at most `reach`.
std::vector<Point> circumcenter_candidates(const PointPattern& p, const NeighborGrid& grid,
                                           double reach) {
  const Window& w = p.window();
  std::vector<Point> out;
  std::vector<std::size_t> nbrs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    nbrs.clear();
    grid.for_each_within(p[i], reach, [&](std::size_t j, double) {
      if (j > i) nbrs.push_back(j);
    });
    std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      const Point u = w.displacement(p[i], p[nbrs[a]]);
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        const Point v = w.displacement(p[i], p[nbrs[b]]);
        const double dx = u.x - v.x;
        const double dy = u.y - v.y;
        if (dx * dx + dy * dy > reach * reach) continue;
        const double det = 2.0 * (u.x * v.y - u.y * v.x);
        if (std::abs(det) < 1e-12) continue;
        const double uu = u.x * u.x + u.y * u.y;
        const double vv = v.x * v.x + v.y * v.y;
        const Point c{(v.y * uu - u.y * vv) / det, (u.x * vv - v.x * uu) / det};
        out.push_back(w.wrap({p[i].x + c.x, p[i].y + c.y}));
      }
    }
  }
  return out;
}

}  // namespace

void BallParams::validate() const {
  if (!(sigma >= 0.0) || !(nu >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("ball parameters need sigma >= 0 and nu >= 0");
  }
}

nlohmann::json BallParams::to_json() const {
  return {{"sigma", sigma}, {"rho", rho}, {"nu", nu}};
}

BallParams operator+(const BallParams& a, const BallParams& b) {
  return {a.sigma + b.sigma, a.rho + b.rho, a.nu + b.nu};
}

BallParams mix(const BallParams& a, const BallParams& b, double t) {
  return {t * a.sigma + (1 - t) * b.sigma, t * a.rho + (1 - t) * b.rho, t * a.nu + (1 - t) * b.nu};
}

GEnvelope::GEnvelope(std::function<double(double)> g, std::vector<double> discontinuities,
                     double quadratic_coef, double r0, std::string name)
    : g_(std::move(g)),
      disc_(std::move(discontinuities)),
      coef_(quadratic_coef),
      r0_(r0),
      name_(std::move(name)) {}

GEnvelope GEnvelope::polynomial(const BallParams& p) {
  GEnvelope e([p](double r) { return p(r); }, {}, p.nu + std::max(0.0, p.rho) + p.sigma, 1.0,
              "polynomial");
  e.extra_ = p.to_json();
  return e;
}

GEnvelope GEnvelope::gauss_square(double pitch) {
  if (!(pitch > 0.0)) throw std::invalid_argument("pitch must be positive");
  const double a = pitch;
  GEnvelope e(
      [a](double r) {
        const double x = r / a;
        return std::numbers::pi * x * x + 2.0 * std::numbers::sqrt2 * x + 1.0;
      },
      {}, (std::numbers::pi + 2.0 * std::numbers::sqrt2 + 1.0) / (a * a), a, "gauss_square");
  e.extra_ = {{"pitch", a}};
  return e;
}

GEnvelope GEnvelope::zero() { return GEnvelope([](double) { return 0.0; }, {}, 0.0, 0.0, "zero"); }

nlohmann::json GEnvelope::to_json() const {
  nlohmann::json j = {{"name", name_}, {"quadratic_coef", coef_}, {"r0", r0_},
                      {"discontinuities", disc_}};
  if (!extra_.is_null()) j["params"] = extra_;
  return j;
}

ProbeSpec ProbeSpec::strong(double spacing, double max_radius) {
  ProbeSpec s;
  s.grid_spacing = spacing;
  s.max_radius = max_radius;
  return s;
}

ProbeSpec ProbeSpec::weak(const PointPattern& observer, double max_radius) {
  ProbeSpec s;
  s.mode = ProbeMode::weak;
  s.observer = &observer;
  s.max_radius = max_radius;
  return s;
}

nlohmann::json RegulationVerdict::to_json() const {
  nlohmann::json j = {{"holds", holds}, {"probes", probes_used}, {"mode", mode},
                      {"params", params}};
  if (worst_violation) {
    const auto& v = *worst_violation;
    j["worst_violation"] = {{"x", v.center.x}, {"y", v.center.y}, {"r", v.r},
                            {"count", v.count}, {"envelope", v.envelope}};
  } else {
    j["worst_violation"] = nullptr;
  }
  return j;
}

RegulationVerdict verify_ball(const PointPattern& p, const BallParams& params,
                              const ProbeSpec& probes) {
  params.validate();
  const double radius = resolve_radius(p, probes.max_radius);
  const auto centers = probe_centers(p, probes, default_ball_spacing(p));
  const Best best = envelope_scan(p, centers, radius, params, probes.threads);
  nlohmann::json j = params.to_json();
  j["max_radius"] = radius;
  return envelope_verdict(best, centers.size(), probes.mode, std::move(j));
}

RegulationVerdict verify_g_ball(const PointPattern& p, const GEnvelope& g,
                                const ProbeSpec& probes) {
  const double radius = resolve_radius(p, probes.max_radius);
  const auto centers = probe_centers(p, probes, default_ball_spacing(p));
  const Best best = envelope_scan(p, centers, radius, g, probes.threads);
  nlohmann::json j = g.to_json();
  j["max_radius"] = radius;
  return envelope_verdict(best, centers.size(), probes.mode, std::move(j));
}

RegulationVerdict verify_void(const PointPattern& p, const VoidParams& params,
                              const ProbeSpec& probes) {
  const double tau = params.tau;
  if (!(tau > 0.0)) throw std::invalid_argument("void radius must be positive");
  if (tau > p.window().half_side()) {
    throw std::invalid_argument("void radius exceeds half the window side");
  }
  RegulationVerdict out;
  out.mode = mode_name(probes.mode);
  out.params = {{"tau", tau}};

  const double cell = std::max(tau, p.window().side() / 1024.0);
  const NeighborGrid grid(p.window(), p.points(), cell);
  // Tracks the probe farthest from its nearest point.
  std::optional<Violation> worst;
  auto probe = [&](Point c) {
    double d2min = std::numeric_limits<double>::infinity();
    grid.for_each_within(c, tau, [&](std::size_t, double d2) { d2min = std::min(d2min, d2); });
    const double d = std::isinf(d2min) ? nearest_distance(grid, c) : std::sqrt(d2min);
    if (!worst || d > worst->r) worst = Violation{c, d, d <= tau ? 1.0 : 0.0, 1.0};
  };

  if (probes.mode == ProbeMode::weak) {
    const auto centers = probe_centers(p, probes, 0.0);
    for (const auto& c : centers) probe(c);
    out.probes_used = centers.size();
  } else {
    const double h = probes.grid_spacing > 0.0 ? std::min(probes.grid_spacing, tau / 8.0)
                                               : tau / 8.0;
    const auto centers = grid_probes(p.window(), h);
    for (const auto& c : centers) probe(c);
    out.probes_used = centers.size();
    if (worst && worst->r <= tau && !p.empty()) {
      // Every location is within tau + h/sqrt(2) of a point, so every Voronoi
      // vertex comes from a triple with pairwise distance <= 2 (tau + h/sqrt(2)).
      const double reach = 2.0 * (tau + h / std::numbers::sqrt2);
      if (reach < p.window().half_side()) {
        const NeighborGrid wide(p.window(), p.points(), reach);
        const auto extra = circumcenter_candidates(p, wide, reach);
        for (const auto& c : extra) probe(c);
        out.probes_used += extra.size();
      }
    }
  }
  out.worst_violation = worst;
  out.holds = !worst || worst->r <= tau;
  return out;
}

double covering_radius(const PointPattern& p, double grid_spacing) {
  if (p.empty()) return std::numeric_limits<double>::infinity();
  const double lambda = p.intensity();
  const double h = grid_spacing > 0.0 ? grid_spacing : 0.125 / std::sqrt(lambda);
  const NeighborGrid grid(p.window(), p.points(), std::min(p.window().side(), 1.0 / std::sqrt(lambda)));
  double worst = 0.0;
  for (const auto& c : grid_probes(p.window(), h)) worst = std::max(worst, nearest_distance(grid, c));
  const double reach = 2.0 * (worst + h / std::numbers::sqrt2);
  const NeighborGrid wide(p.window(), p.points(), std::min(reach, p.window().side()));
  for (const auto& c : circumcenter_candidates(p, wide, reach)) {
    worst = std::max(worst, nearest_distance(grid, c));
  }
  return worst;
}

double shot_noise(const PointPattern& p, const PathLossModel& l, Point center, double R,
                  const std::vector<std::size_t>& exclude) {
  const bool all = std::isinf(R);
  const double R2 = R * R;
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::find(exclude.begin(), exclude.end(), i) != exclude.end()) continue;
    const double d2 = p.window().distance_sq(center, p[i]);
    if (all || d2 < R2) s += l(std::sqrt(d2));
  }
  return s;
}

double shot_noise_bound(const BallParams& params, const PathLossModel& l, double R) {
  params.validate();
  double v = params.sigma * l(0.0);
  if (params.rho != 0.0) v += params.rho * l.integral(R);
  if (params.nu != 0.0) v += 2.0 * params.nu * l.integral_r(R);
  return v;
}

double g_shot_noise_bound(const GEnvelope& g, const PathLossModel& l, double R) {
  if (!(R >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  if (R == 0.0) return l(0.0) * g(0.0);
  std::vector<double> cuts = l.breakpoints();
  cuts.insert(cuts.end(), g.discontinuities().begin(), g.discontinuities().end());
  const auto part = integrate_piecewise([&](double r) { return g(r) * l.neg_derivative(r); }, 0.0,
                                        R, cuts, 1e-12);
  double v = part.value;
  for (const auto& [at, size] : l.jumps()) {
    if (at < R) v += g(at) * size;
  }
  if (std::isfinite(R)) v += l(R) * g(R);
  return v;
}

BallParams hardcore_params(double H) {
  if (!(H > 0.0)) throw std::invalid_argument("hardcore distance must be positive");
  return {1.0, 2.0 * kPackingFraction / H, kPackingFraction / (H * H)};
}

GEnvelope piecewise_hardcore_envelope(double H) {
  if (!(H > 0.0)) throw std::invalid_argument("hardcore distance must be positive");
  GEnvelope e(
      [H](double r) {
        if (r < H) return 1.0;
        const double x = 1.0 + r / H;
        return kPackingFraction * x * x;
      },
      {H}, 4.0 * kPackingFraction / (H * H), H, "piecewise_hardcore");
  e.extra_ = {{"hardcore_distance", H}};
  return e;
}

std::optional<ShotNoiseWitness> shot_noise_witness(const PointPattern& p,
                                                   const BallParams& params,
                                                   const RegulationVerdict& verdict) {
  if (verdict.holds || !verdict.worst_violation) return std::nullopt;
  const Violation& v = *verdict.worst_violation;
  if (!(v.r > 0.0)) return std::nullopt;
  PathLossModel ind = PathLossModel::indicator(v.r);
  const double sn = shot_noise(p, ind, v.center, std::numeric_limits<double>::infinity());
  const double bound = shot_noise_bound(params, ind, std::numeric_limits<double>::infinity());
  if (!(sn > bound)) return std::nullopt;
  return ShotNoiseWitness{v, ind, sn, bound};
}

nlohmann::json ExtremalParams::to_json() const {
  nlohmann::json j = {{"sigma_c", sigma_c}, {"rho_c", rho_c}, {"nu_c", nu_c},
                      {"nu_capped", nu_capped}, {"tau_c", tau_c},
                      {"intensity", intensity}, {"grid", grid}};
  j["sandwich_holds"] = sandwich_holds ? nlohmann::json(*sandwich_holds) : nlohmann::json();
  return j;
}

ExtremalParams estimate_extremal(const std::vector<PointPattern>& ensemble,
                                 const std::vector<ExtremalMode>& modes,
                                 const ExtremalOptions& options) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  ExtremalParams out;
  double lambda = 0.0;
  for (const auto& p : ensemble) lambda += p.intensity();
  lambda /= static_cast<double>(ensemble.size());
  out.intensity = lambda;
  const auto wants = [&](ExtremalMode m) {
    return std::find(modes.begin(), modes.end(), m) != modes.end();
  };

  if (wants(ExtremalMode::sigma_c)) {
    // Limit of the open-ball count as r -> 0: the largest point multiplicity.
    double sc = 0.0;
    for (const auto& p : ensemble) {
      std::vector<Point> pts(p.points().begin(), p.points().end());
      std::sort(pts.begin(), pts.end(),
                [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
      std::size_t run = pts.empty() ? 0 : 1;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        run = pts[i] == pts[i - 1] ? run + 1 : 1;
        sc = std::max(sc, static_cast<double>(run));
      }
      sc = std::max(sc, static_cast<double>(run));
    }
    out.sigma_c = sc;
    out.grid["sigma_c"] = "point multiplicity";
  }

  if (wants(ExtremalMode::nu_c)) {
    const double rho_cap =
        options.rho_cap > 0.0 ? options.rho_cap : 2.0 * std::numbers::sqrt2 * std::sqrt(lambda);
    const double sigma_cap = options.sigma_cap;
    double nu_limit = 0.0;
    double nu_capped = 0.0;
    double used_radius = 0.0;
    for (const auto& p : ensemble) {
      const double radius = resolve_radius(p, options.max_radius);
      used_radius = radius;
      ProbeSpec spec = ProbeSpec::strong(options.grid_spacing, radius);
      const auto centers = probe_centers(p, spec, default_ball_spacing(p));
      const NeighborGrid grid(p.window(), p.points(), radius);
      const double r2 = radius * radius;
      std::vector<double> d2;
      for (const auto& c : centers) {
        d2.clear();
        grid.for_each_within(c, radius, [&](std::size_t, double s) { d2.push_back(s); });
        std::sort(d2.begin(), d2.end());
        // sup_c N(c, R) / R^2 tends to nu_c from above: sigma and rho terms vanish.
        const auto open = std::lower_bound(d2.begin(), d2.end(), r2) - d2.begin();
        nu_limit = std::max(nu_limit, static_cast<double>(open) / r2);
        // Smallest nu with k <= sigma_cap + rho_cap d_k + nu d_k^2.
        for (std::size_t k = 0; k < d2.size(); ++k) {
          const double kk = static_cast<double>(k + 1);
          if (d2[k] == 0.0) {
            if (kk > sigma_cap) nu_capped = std::numeric_limits<double>::infinity();
            continue;
          }
          const double d = std::sqrt(d2[k]);
          nu_capped = std::max(nu_capped, (kk - sigma_cap - rho_cap * d) / d2[k]);
        }
      }
    }
    out.nu_c = nu_limit;
    out.nu_capped = nu_capped;
    out.grid["nu_c"] = {{"estimator", "max count over R^2"},
                        {"max_radius", used_radius},
                        {"capped", {{"sigma_cap", sigma_cap}, {"rho_cap", rho_cap}}}};
  }

  if (wants(ExtremalMode::tau_c)) {
    double tc = 0.0;
    for (const auto& p : ensemble) tc = std::max(tc, covering_radius(p, options.grid_spacing));
    out.tau_c = tc;
    out.grid["tau_c"] = "covering radius (grid plus circumcenters)";
  }

  if (wants(ExtremalMode::nu_c) && wants(ExtremalMode::tau_c) && out.tau_c > 0.0) {
    const double mass = lambda * std::numbers::pi;
    out.sandwich_holds = 1.0 / (out.tau_c * out.tau_c) <= mass && mass <= out.nu_c;
  }
  return out;
}

CellLoad verify_cell_load(const PointPattern& bs, const PointPattern& users, std::size_t K) {
  if (bs.empty()) throw std::invalid_argument("no base stations");
  if (!(bs.window() == users.window())) throw std::invalid_argument("window mismatch");
  CellLoad out;
  out.loads.assign(bs.size(), 0);
  out.serving.resize(users.size());
  const NeighborGrid grid(bs.window(), bs.points(),
                          std::min(bs.window().side(), 1.0 / std::sqrt(bs.intensity())));
  for (std::size_t u = 0; u < users.size(); ++u) {
    const auto n = grid.nearest(users[u]);
    out.serving[u] = n->first;
    ++out.loads[n->first];
  }
  RegulationVerdict& v = out.verdict;
  v.mode = "cell_load";
  v.params = {{"K", K}};
  v.probes_used = bs.size();
  const auto it = std::max_element(out.loads.begin(), out.loads.end());
  out.max_load = *it;
  const auto worst = static_cast<std::size_t>(it - out.loads.begin());
  v.worst_violation = Violation{bs[worst], 0.0, static_cast<double>(out.max_load),
                                static_cast<double>(K)};
  v.holds = out.max_load <= K;
  return out;
}

}  // namespace snc
