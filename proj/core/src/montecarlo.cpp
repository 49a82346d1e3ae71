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

#include "snc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "snc/parallel.hpp"
#include "snc/quadrature.hpp"
#include "snc/random.hpp"

namespace snc {
namespace {

constexpr double kSeriesCut = 0.02;

double gain_from_d2(const PathLossModel& l, double d2) {
  if (l.kind() == PathLossModel::Kind::power_law && l.power() == 1) {
    if (d2 <= 1.0) return 1.0;
    const double a = l.alpha();
    if (a == 4.0) return 1.0 / (d2 * d2);
    if (a == 3.0) return 1.0 / (d2 * std::sqrt(d2));
    return std::pow(d2, -0.5 * a);
  }
  return l(std::sqrt(d2));
}

std::vector<std::size_t> select_links(const SimConfig& cfg, std::size_t n, std::size_t index) {
  std::vector<std::size_t> links(n);
  std::iota(links.begin(), links.end(), 0);
  if (cfg.links_per_realization == 0 || cfg.links_per_realization >= n) return links;
  Engine eng = make_engine(cfg.seed, "link-selection", index);
  for (std::size_t i = 0; i < cfg.links_per_realization; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform01(eng) * static_cast<double>(n - i));
    std::swap(links[i], links[std::min(j, n - 1)]);
  }
  links.resize(cfg.links_per_realization);
  std::sort(links.begin(), links.end());
  return links;
}

double quantile_of(std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

double sum_ordered(const std::vector<double>& v) {
  // Pairwise summation keeps the result independent of thread layout.
  if (v.empty()) return 0.0;
  std::vector<double> buf(v);
  while (buf.size() > 1) {
    std::vector<double> next((buf.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = buf[2 * i] + (2 * i + 1 < buf.size() ? buf[2 * i + 1] : 0.0);
    }
    buf.swap(next);
  }
  return buf[0];
}

}  // namespace

void GeometrySpec::validate() const {
  static const char* kinds[] = {"lattice_triangular", "lattice_square", "ppp",
                                "matern1",            "matern2",        "perturbed_square"};
  if (std::find(std::begin(kinds), std::end(kinds), kind) == std::end(kinds)) {
    throw std::invalid_argument("unknown geometry kind: " + kind);
  }
  if (kind.rfind("lattice", 0) == 0 || kind == "perturbed_square") {
    if (!(pitch > 0.0)) throw std::invalid_argument("lattice pitch must be positive");
  } else if (!(intensity > 0.0)) {
    throw std::invalid_argument("intensity must be positive");
  }
  if (kind.rfind("matern", 0) == 0 && !(hardcore_distance > 0.0)) {
    throw std::invalid_argument("hardcore distance must be positive");
  }
  if (!(displacement >= 0.0)) throw std::invalid_argument("displacement must be nonnegative");
}

nlohmann::json GeometrySpec::to_json() const {
  return {{"kind", kind}, {"pitch", pitch}, {"intensity", intensity},
          {"hardcore_distance", hardcore_distance}, {"displacement", displacement}};
}

PointPattern generate_geometry(const GeometrySpec& spec, const Window& window,
                               std::uint64_t seed) {
  spec.validate();
  if (spec.kind == "lattice_triangular") {
    return generate_lattice_with_pitch(LatticeKind::triangular, spec.pitch, window, seed);
  }
  if (spec.kind == "lattice_square") {
    return generate_lattice_with_pitch(LatticeKind::square, spec.pitch, window, seed);
  }
  if (spec.kind == "perturbed_square") {
    const auto base = generate_lattice_with_pitch(LatticeKind::square, spec.pitch, window, seed);
    return generate_perturbed_lattice(base, spec.displacement, derive_seed(seed, "perturb"));
  }
  if (spec.kind == "ppp") return generate_ppp(spec.intensity, window, seed);
  const MaternKind mk = spec.kind == "matern1" ? MaternKind::I : MaternKind::II;
  return generate_matern(mk, spec.intensity, spec.hardcore_distance, window, seed);
}

void SimConfig::validate() const {
  geometry.validate();
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(noise >= 0.0)) throw std::invalid_argument("noise must be nonnegative");
  if (realizations < 1) throw std::invalid_argument("at least one realization is needed");
  if (!(side >= 4.0 * tau)) throw std::invalid_argument("window side must be at least 4 tau");
  if (pathloss.kind() == PathLossModel::Kind::power_law && side < 40.0 * tau) {
    throw std::invalid_argument("power-law scenarios need a window side of at least 40 tau");
  }
  if (image_shells < 0 || image_shells > 3) {
    throw std::invalid_argument("image_shells must lie in [0, 3]");
  }
}

nlohmann::json SimConfig::to_json() const {
  return {{"geometry", geometry.to_json()},
          {"pathloss", pathloss.to_json()},
          {"fading", fading.name()},
          {"tau", tau},
          {"noise", noise},
          {"theta_db", theta_db},
          {"realizations", realizations},
          {"links_per_realization", links_per_realization},
          {"seed", seed},
          {"side", side},
          {"image_shells", image_shells}};
}

BipolarScenario make_realization(const SimConfig& cfg, std::size_t index) {
  const std::uint64_t s = derive_seed(cfg.seed, "realization", index);
  const Window window(cfg.side);
  PointPattern tx = generate_geometry(cfg.geometry, window, derive_seed(s, "geometry"));
  return generate_bipolar(tx, cfg.tau, derive_seed(s, "bipolar"));
}

std::vector<double> interferer_gains(const BipolarScenario& sc, std::size_t link,
                                     const PathLossModel& l, int image_shells) {
  const Window& w = sc.transmitters.window();
  const Point rx = sc.receivers[sc.pairing[link]];
  const double L = w.side();
  const int s = image_shells;
  std::vector<double> out;
  out.reserve(sc.transmitters.size() * static_cast<std::size_t>((2 * s + 1) * (2 * s + 1)));
  for (std::size_t j = 0; j < sc.transmitters.size(); ++j) {
    const Point d = w.displacement(rx, sc.transmitters[j]);
    for (int a = -s; a <= s; ++a) {
      for (int b = -s; b <= s; ++b) {
        if (j == link && a == 0 && b == 0) continue;
        const double dx = d.x + a * L;
        const double dy = d.y + b * L;
        out.push_back(gain_from_d2(l, dx * dx + dy * dy));
      }
    }
  }
  return out;
}

RayleighLink::RayleighLink(std::vector<double> gains, double signal_gain, double noise)
    : gains_(std::move(gains)), signal_(signal_gain), noise_(noise) {
  std::sort(gains_.begin(), gains_.end(), std::greater<>());
  const std::size_t n = gains_.size();
  suffix_.assign((n + 1) * kMoments, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double p = 1.0;
    for (int j = 0; j < kMoments; ++j) {
      p *= gains_[i];
      suffix_[i * kMoments + j] = suffix_[(i + 1) * kMoments + j] + p;
    }
  }
}

double RayleighLink::log_reliability(double theta) const {
  if (theta <= 0.0) return 0.0;
  const double c = theta / signal_;
  const double cut = kSeriesCut / c;
  const auto split = std::partition_point(gains_.begin(), gains_.end(),
                                          [cut](double g) { return g > cut; });
  const auto k = static_cast<std::size_t>(split - gains_.begin());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log1p(c * gains_[i]);
  // log(1 + x) = x - x^2/2 + ... with x = c g <= 0.02 on the remaining terms.
  double cp = 1.0;
  for (int j = 0; j < kMoments; ++j) {
    cp *= c;
    const double term = cp * suffix_[k * kMoments + j] / (j + 1);
    s += (j % 2 == 0) ? term : -term;
  }
  return -c * noise_ - s;
}

double RayleighLink::reliability(double theta) const { return std::exp(log_reliability(theta)); }

double RayleighLink::ergodic_rate() const {
  const auto f = [this](double t) { return reliability(std::expm1(t)); };
  double t_max = 1.0;
  while (log_reliability(std::expm1(t_max)) > std::log(1e-16)) {
    t_max += 1.0;
    if (t_max > 400.0) break;
  }
  return integrate(f, 0.0, t_max, 1e-10, 15).value;
}

Estimate conditional_reliability_mc(const BipolarScenario& sc, std::size_t link, double theta,
                                    const FadingModel& fading, double noise,
                                    const PathLossModel& l, std::size_t n_fading,
                                    std::uint64_t seed, int image_shells) {
  if (n_fading == 0) throw std::invalid_argument("n_fading must be positive");
  const auto gains = interferer_gains(sc, link, l, image_shells);
  const double lt = l(sc.tau);
  Engine eng = make_engine(seed, "link-fading", link);
  std::size_t hits = 0;
  for (std::size_t n = 0; n < n_fading; ++n) {
    const double signal = fading.sample(eng) * lt;
    double interference = noise;
    for (const double g : gains) interference += fading.sample(eng) * g;
    if (signal > theta * interference) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n_fading);
  return {p, std::sqrt(std::max(p * (1.0 - p), 1e-300) / static_cast<double>(n_fading))};
}

Estimate conditional_ergodic_rate_mc(const BipolarScenario& sc, std::size_t link,
                                     const FadingModel& fading, double noise,
                                     const PathLossModel& l, std::size_t n_fading,
                                     std::uint64_t seed, int image_shells) {
  if (n_fading == 0) throw std::invalid_argument("n_fading must be positive");
  const auto gains = interferer_gains(sc, link, l, image_shells);
  const double lt = l(sc.tau);
  Engine eng = make_engine(seed, "link-rate-fading", link);
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t n = 0; n < n_fading; ++n) {
    const double signal = fading.sample(eng) * lt;
    double interference = noise;
    for (const double g : gains) interference += fading.sample(eng) * g;
    const double r = interference > 0.0 ? std::log1p(signal / interference) : 0.0;
    sum += r;
    sum2 += r * r;
  }
  const double nn = static_cast<double>(n_fading);
  const double mean = sum / nn;
  const double var = std::max(0.0, sum2 / nn - mean * mean);
  return {mean, std::sqrt(var / nn)};
}

double conditional_reliability(const BipolarScenario& sc, std::size_t link, double theta,
                               const FadingModel& fading, double noise, const PathLossModel& l,
                               ReliabilityMethod method, std::size_t n_fading,
                               std::uint64_t seed, int image_shells) {
  if (link >= sc.transmitters.size()) throw std::out_of_range("link index out of range");
  if (method == ReliabilityMethod::exact_rayleigh) {
    if (fading.kind() != FadingModel::Kind::rayleigh) {
      throw std::invalid_argument("exact evaluation needs Rayleigh fading");
    }
    RayleighLink link_law(interferer_gains(sc, link, l, image_shells), l(sc.tau), noise);
    return link_law.reliability(theta);
  }
  return conditional_reliability_mc(sc, link, theta, fading, noise, l, n_fading, seed,
                                    image_shells)
      .mean;
}

nlohmann::json ReliabilitySweep::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"theta_db", r.theta_db}, {"sim_min", r.min}, {"sim_q01", r.q01},
                         {"sim_median", r.median}, {"sim_mean", r.mean}});
  }
  return {{"links", links}, {"rows", rows_json}};
}

ReliabilitySweep min_reliability_sweep(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t nt = cfg.theta_db.size();
  std::vector<double> theta(nt);
  for (std::size_t i = 0; i < nt; ++i) theta[i] = std::pow(10.0, cfg.theta_db[i] / 10.0);
  const bool rayleigh = cfg.fading.kind() == FadingModel::Kind::rayleigh;

  // per_real[r][link * nt + i]
  std::vector<std::vector<double>> per_real(cfg.realizations);
  parallel_for(cfg.realizations, cfg.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      const BipolarScenario sc = make_realization(cfg, r);
      const auto links = select_links(cfg, sc.transmitters.size(), r);
      auto& out = per_real[r];
      out.reserve(links.size() * nt);
      const double lt = cfg.pathloss(cfg.tau);
      for (const std::size_t link : links) {
        if (rayleigh) {
          const RayleighLink law(interferer_gains(sc, link, cfg.pathloss, cfg.image_shells), lt,
                                 cfg.noise);
          for (std::size_t i = 0; i < nt; ++i) out.push_back(law.reliability(theta[i]));
        } else {
          const std::uint64_t s = derive_seed(cfg.seed, "sweep-fading", r);
          for (std::size_t i = 0; i < nt; ++i) {
            out.push_back(conditional_reliability_mc(sc, link, theta[i], cfg.fading, cfg.noise,
                                                     cfg.pathloss, 2000, s, cfg.image_shells)
                              .mean);
          }
        }
      }
    }
  });

  ReliabilitySweep sweep;
  for (const auto& v : per_real) sweep.links += v.size() / std::max<std::size_t>(nt, 1);
  for (std::size_t i = 0; i < nt; ++i) {
    std::vector<double> col;
    col.reserve(sweep.links);
    for (const auto& v : per_real) {
      for (std::size_t k = i; k < v.size(); k += nt) col.push_back(v[k]);
    }
    SweepRow row{cfg.theta_db[i], 0.0, 0.0, 0.0, 0.0};
    if (!col.empty()) {
      row.min = *std::min_element(col.begin(), col.end());
      row.mean = sum_ordered(col) / static_cast<double>(col.size());
      row.q01 = quantile_of(col, 0.01);
      row.median = quantile_of(col, 0.5);
    }
    sweep.rows.push_back(row);
  }
  return sweep;
}

RateSamples ergodic_rate_samples(const SimConfig& cfg, std::size_t n_fading) {
  cfg.validate();
  const bool rayleigh = cfg.fading.kind() == FadingModel::Kind::rayleigh;
  std::vector<std::vector<double>> per_real(cfg.realizations);
  parallel_for(cfg.realizations, cfg.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      const BipolarScenario sc = make_realization(cfg, r);
      const auto links = select_links(cfg, sc.transmitters.size(), r);
      const double lt = cfg.pathloss(cfg.tau);
      for (const std::size_t link : links) {
        if (rayleigh) {
          const RayleighLink law(interferer_gains(sc, link, cfg.pathloss, cfg.image_shells), lt,
                                 cfg.noise);
          per_real[r].push_back(law.ergodic_rate());
        } else {
          per_real[r].push_back(conditional_ergodic_rate_mc(
                                    sc, link, cfg.fading, cfg.noise, cfg.pathloss, n_fading,
                                    derive_seed(cfg.seed, "rate-fading", r), cfg.image_shells)
                                    .mean);
        }
      }
    }
  });
  RateSamples out;
  for (const auto& v : per_real) out.rates.insert(out.rates.end(), v.begin(), v.end());
  out.links = out.rates.size();
  if (!out.rates.empty()) {
    out.min = *std::min_element(out.rates.begin(), out.rates.end());
    out.mean = sum_ordered(out.rates) / static_cast<double>(out.links);
  }
  return out;
}

std::vector<TailPoint> interference_tail(const SimConfig& cfg, const std::vector<double>& x_grid,
                                         std::size_t samples) {
  cfg.validate();
  std::vector<double> values;
  values.reserve(samples);
  for (std::size_t r = 0; values.size() < samples; ++r) {
    const BipolarScenario sc = make_realization(cfg, r);
    if (sc.transmitters.empty()) continue;
    Engine eng = make_engine(cfg.seed, "interference-fading", r);
    for (const std::size_t link : select_links(cfg, sc.transmitters.size(), r)) {
      if (values.size() >= samples) break;
      double s = 0.0;
      for (const double g : interferer_gains(sc, link, cfg.pathloss, cfg.image_shells)) {
        s += cfg.fading.sample(eng) * g;
      }
      values.push_back(s);
    }
    if (r > 100 * samples + 1000) throw std::runtime_error("geometry produced no links");
  }
  std::sort(values.begin(), values.end());
  std::vector<TailPoint> out;
  for (const double x : x_grid) {
    const auto above = values.end() - std::upper_bound(values.begin(), values.end(), x);
    out.push_back({x, static_cast<double>(above) / static_cast<double>(values.size())});
  }
  return out;
}

std::vector<double> link_reliabilities(const SimConfig& cfg, std::size_t realization,
                                       double theta) {
  cfg.validate();
  if (cfg.fading.kind() != FadingModel::Kind::rayleigh) {
    throw std::invalid_argument("link reliabilities are exact only for Rayleigh fading");
  }
  const BipolarScenario sc = make_realization(cfg, realization);
  std::vector<double> out;
  for (const std::size_t link : select_links(cfg, sc.transmitters.size(), realization)) {
    const RayleighLink law(interferer_gains(sc, link, cfg.pathloss, cfg.image_shells),
                           cfg.pathloss(cfg.tau), cfg.noise);
    out.push_back(law.reliability(theta));
  }
  return out;
}

}  // namespace snc
