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

#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "snc/bounds.hpp"
#include "snc/graphs.hpp"
#include "snc/montecarlo.hpp"
#include "snc/pattern_io.hpp"
#include "snc/queueing.hpp"
#include "snc/random.hpp"
#include "snc/regulation.hpp"

namespace snc::cli {

RunContext::RunContext(std::filesystem::path out, std::uint64_t seed, unsigned threads,
                       std::string format)
    : out_(std::move(out)), seed_(seed), threads_(threads), format_(std::move(format)) {
  std::filesystem::create_directories(out_);
}

void RunContext::write_text(const std::string& name, const std::string& content) {
  std::ofstream f(out_ / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (out_ / name).string());
  f << content;
  outputs_.emplace_back(name, hash_text(content));
}

void RunContext::write_table(const std::string& stem, const Table& table) {
  if (format_ == "json") {
    write_text(stem + ".json", table.to_json().dump(2) + "\n");
  } else {
    write_text(stem + ".csv", table.to_csv());
  }
}

void RunContext::write_json(const std::string& name, const nlohmann::json& j) {
  write_text(name, j.dump(2) + "\n");
}

namespace {

using nlohmann::json;

json nullable(double v) { return std::isfinite(v) ? json(v) : json(); }

// Wraps library argument errors raised while reading values into schema errors.
template <class F>
auto checked(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

// Threshold in dB where a non-increasing curve crosses `target`.
double crossing_db(const std::function<double(double)>& curve, double target) {
  double lo = -80.0;
  double hi = 60.0;
  if (curve(lo) < target) return -kInfinity;
  if (curve(hi) >= target) return kInfinity;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (curve(mid) >= target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Linear interpolation of a tabulated non-increasing curve.
std::optional<double> crossing_in_table(const std::vector<double>& x, const std::vector<double>& y,
                                        double target) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (y[i] >= target && y[i + 1] < target) {
      return x[i] + (y[i] - target) / (y[i] - y[i + 1]) * (x[i + 1] - x[i]);
    }
  }
  return std::nullopt;
}

SimConfig read_fig_network(Section& cfg, const RunContext& ctx, double alpha) {
  SimConfig sim;
  GeometrySpec geo;
  geo.kind = "lattice_triangular";
  geo.pitch = std::sqrt(3.0);
  sim.geometry = read_geometry(cfg, "geometry", geo);
  sim.pathloss = PathLossModel::power_law(alpha);
  sim.fading = read_fading(cfg, "fading", "rayleigh");
  sim.tau = cfg.number("tau", 1.0);
  sim.noise = cfg.number("noise", 0.0);
  sim.side = cfg.number("side", 26.0 * std::sqrt(3.0));
  sim.image_shells = static_cast<int>(cfg.count("image_shells", 1));
  sim.realizations = cfg.count("realizations", 10);
  sim.links_per_realization = cfg.count("links_per_realization", 0);
  sim.seed = ctx.seed();
  sim.threads = ctx.threads();
  checked("network", [&] {
    sim.validate();
    return 0;
  });
  return sim;
}

LinkScenario analytic_link(const SimConfig& sim, double hardcore) {
  LinkScenario s;
  s.ball = hardcore_params(hardcore);
  s.pathloss = sim.pathloss;
  s.tau = sim.tau;
  s.noise = sim.noise;
  s.fading = sim.fading;
  return s;
}

int run_generate(Section& cfg, RunContext& ctx) {
  GeometrySpec geo;
  geo.kind = "matern2";
  geo.intensity = 1.0;
  geo.hardcore_distance = 0.5;
  geo = read_geometry(cfg, "geometry", geo);
  const double side = cfg.number("side", 40.0);
  const auto tau = cfg.optional_number("bipolar_tau");
  cfg.finish();

  const Window w = checked("side", [&] { return Window(side); });
  const PointPattern p = generate_geometry(geo, w, derive_seed(ctx.seed(), "generate"));
  std::ostringstream text;
  write_pattern(text, p);
  ctx.write_text("pattern.txt", text.str());
  json summary = {{"points", p.size()},
                  {"intensity", p.intensity()},
                  {"min_pairwise_distance", nullable(p.min_pairwise_distance())}};
  if (tau) {
    const auto sc = checked("bipolar_tau",
                            [&] { return generate_bipolar(p, *tau, derive_seed(ctx.seed(), "pairs")); });
    std::ostringstream rx;
    write_pattern(rx, sc.receivers);
    ctx.write_text("receivers.txt", rx.str());
    summary["tau"] = *tau;
  }
  ctx.write_json("summary.json", summary);
  return kOk;
}

int run_verify(Section& cfg, RunContext& ctx) {
  GeometrySpec geo;
  geo.kind = "matern2";
  geo.intensity = 1.0;
  geo.hardcore_distance = 1.0;
  geo = read_geometry(cfg, "geometry", geo);
  const double side = cfg.number("side", 40.0);
  const std::size_t reals = cfg.count("realizations", 5);
  const BallParams ball = read_ball(cfg, "ball", geo.hardcore_distance);
  const bool envelope = cfg.flag("piecewise_envelope", geo.kind.rfind("matern", 0) == 0);
  const auto void_tau = cfg.optional_number("void_tau");
  const std::string mode = cfg.text("mode", "strong");
  if (mode != "strong" && mode != "weak") throw SchemaError("mode: expected strong or weak");
  std::optional<GeometrySpec> observer;
  if (mode == "weak") {
    GeometrySpec o;
    o.kind = "ppp";
    o.intensity = 1.0;
    observer = read_geometry(cfg, "observer", o);
  }
  const double max_radius = cfg.number("max_radius", 0.0);
  const double spacing = cfg.number("grid_spacing", 0.0);
  cfg.finish();

  const Window w = checked("side", [&] { return Window(side); });
  Table table({"realization", "points", "check", "holds", "worst_x", "worst_y", "worst_r",
               "worst_count", "worst_envelope"});
  bool all = true;
  for (std::size_t r = 0; r < reals; ++r) {
    const auto p = generate_geometry(geo, w, derive_seed(ctx.seed(), "verify", r));
    std::optional<PointPattern> obs;
    if (observer) obs = generate_geometry(*observer, w, derive_seed(ctx.seed(), "observer", r));
    ProbeSpec probes = obs ? ProbeSpec::weak(*obs, max_radius) : ProbeSpec::strong(spacing, max_radius);
    probes.threads = ctx.threads();
    auto add = [&](const std::string& check, const RegulationVerdict& v) {
      all = all && v.holds;
      const auto& wv = v.worst_violation;
      table.add_row({r, p.size(), check, v.holds, wv ? json(wv->center.x) : json(),
                     wv ? json(wv->center.y) : json(), wv ? json(wv->r) : json(),
                     wv ? json(wv->count) : json(), wv ? json(wv->envelope) : json()});
    };
    checked("verify", [&] {
      add("ball", verify_ball(p, ball, probes));
      if (envelope) {
        add("piecewise_envelope",
            verify_g_ball(p, piecewise_hardcore_envelope(geo.hardcore_distance), probes));
      }
      if (void_tau) add("void", verify_void(p, {*void_tau}, probes));
      return 0;
    });
  }
  ctx.write_table("verdicts", table);
  ctx.write_json("summary.json", {{"all_hold", all}, {"ball", ball.to_json()}});
  return all ? kOk : kDominance;
}

int run_bounds(Section& cfg, RunContext& ctx) {
  const LinkScenario sc = read_scenario(cfg, "scenario");
  const auto theta_db = cfg.grid("theta_db", -20.0, 20.0, 2.5);
  const auto tail_x = cfg.numbers("tail_x", {2.0, 5.0, 10.0, 20.0, 50.0});
  const double target = cfg.number("target_reliability", 0.7);
  cfg.finish();

  const bool rayleigh = sc.fading.kind() == FadingModel::Kind::rayleigh;
  const bool faded = sc.fading.has_density();
  Table rel({"theta_db", "reliability_lb", "zeta", "zeta_error", "rayleigh_lb"});
  for (double db : theta_db) {
    const double th = db_to_linear(db);
    const ZetaResult z = faded ? zeta(sc, th) : ZetaResult{};
    rel.add_row({db, reliability_lb(sc, th), faded ? json(z.value) : json(),
                 faded ? json(z.error_bound) : json(),
                 rayleigh ? json(rayleigh_reliability_lb(sc, th)) : json()});
  }
  ctx.write_table("reliability", rel);

  Table tails({"x", "markov", "chebyshev", "chernoff"});
  for (double x : tail_x) {
    tails.add_row({x, interference_tail_markov(sc, x), interference_tail_chebyshev(sc, x),
                   interference_tail_chernoff(sc, x).value});
  }
  ctx.write_table("tails", tails);

  const auto report = make_bound_report(sc, {});
  json summary = report.to_json();
  summary.erase("zeta");
  summary.erase("rayleigh_lb");
  if (rayleigh) {
    const auto inv = invert_rayleigh_bound(sc, target);
    summary["rayleigh_threshold_db"] = {{"target", target},
                                        {"theta_db", nullable(linear_to_db(inv.theta))},
                                        {"capped", inv.capped},
                                        {"unattainable", inv.unattainable}};
  }
  ctx.write_json("summary.json", summary);
  return kOk;
}

int run_sweep_fig3(Section& cfg, RunContext& ctx) {
  const double alpha = cfg.number("alpha", 4.0);
  const double hardcore = cfg.number("hardcore_distance", 1.0);
  SimConfig sim = read_fig_network(cfg, ctx, alpha);
  sim.theta_db = cfg.grid("theta_db", -20.0, 20.0, 2.5);
  const double target = cfg.number("target_reliability", 0.7);
  cfg.finish();

  const LinkScenario sc = checked("scenario", [&] { return analytic_link(sim, hardcore); });
  const bool rayleigh = sim.fading.kind() == FadingModel::Kind::rayleigh;
  const auto sweep = min_reliability_sweep(sim);
  Table table({"theta_db", "analytic", "rayleigh_lb", "zeta", "simulated_min", "simulated_q01",
               "simulated_median", "simulated_mean"});
  bool dominated = true;
  std::vector<double> xs, mins;
  for (const auto& row : sweep.rows) {
    const double th = db_to_linear(row.theta_db);
    const double analytic = reliability_lb(sc, th);
    dominated = dominated && row.min >= analytic;
    table.add_row({row.theta_db, analytic, rayleigh ? json(rayleigh_reliability_lb(sc, th)) : json(),
                   zeta(sc, th).value, row.min, row.q01, row.median, row.mean});
    xs.push_back(row.theta_db);
    mins.push_back(row.min);
  }
  ctx.write_table("sweep", table);
  const double analytic_db =
      crossing_db([&](double db) { return reliability_lb(sc, db_to_linear(db)); }, target);
  const auto sim_db = crossing_in_table(xs, mins, target);
  json gap = nullptr;
  if (sim_db && std::isfinite(analytic_db)) gap = *sim_db - analytic_db;
  ctx.write_json("summary.json", {{"links", sweep.links},
                                  {"alpha", alpha},
                                  {"dominated", dominated},
                                  {"target_reliability", target},
                                  {"analytic_threshold_db", nullable(analytic_db)},
                                  {"simulated_threshold_db", sim_db ? json(*sim_db) : json()},
                                  {"horizontal_gap_db", gap}});
  return dominated ? kOk : kDominance;
}

double rate_scale(Section& cfg) {
  const std::string unit = cfg.text("rate_unit", "nats");
  if (unit == "nats") return 1.0;
  if (unit == "bits") return 1.0 / std::numbers::ln2;
  throw SchemaError("rate_unit: expected nats or bits");
}

int run_sweep_fig4(Section& cfg, RunContext& ctx) {
  const auto alphas = cfg.numbers("alpha", {3.0, 4.0});
  const double hardcore = cfg.number("hardcore_distance", 1.0);
  SimConfig sim = read_fig_network(cfg, ctx, alphas.empty() ? 4.0 : alphas.front());
  const std::size_t n_fading = cfg.count("fading_samples", 2000);
  const double scale = rate_scale(cfg);
  cfg.finish();
  if (alphas.empty()) throw SchemaError("alpha: at least one exponent is required");

  Table table({"alpha", "analytic", "simulated_min", "simulated_mean", "gap", "links"});
  bool dominated = true;
  for (double alpha : alphas) {
    sim.pathloss = checked("alpha", [&] { return PathLossModel::power_law(alpha); });
    const LinkScenario sc = checked("scenario", [&] { return analytic_link(sim, hardcore); });
    const auto rs = ergodic_rate_samples(sim, n_fading);
    const double analytic = ergodic_rate_lb(sc);
    dominated = dominated && rs.min >= analytic;
    table.add_row({alpha, scale * analytic, scale * rs.min, scale * rs.mean,
                   scale * (rs.min - analytic), rs.links});
  }
  ctx.write_table("rates", table);
  ctx.write_json("summary.json", {{"dominated", dominated}, {"unit", scale == 1.0 ? "nats" : "bits"}});
  return dominated ? kOk : kDominance;
}

int run_queue(Section& cfg, RunContext& ctx) {
  const LinkScenario sc = read_scenario(cfg, "scenario");
  if (sc.fading.kind() != FadingModel::Kind::rayleigh) {
    throw SchemaError("scenario.fading: the queue experiment uses exact Rayleigh link laws");
  }
  const auto theta_db_opt = cfg.optional_number("theta_db");
  const double zeta_target = cfg.number("zeta_target", 0.5);
  const double lambda = cfg.number("lambda", 0.2);
  const std::uint64_t slots = cfg.count("slots", 100000);
  const std::size_t patterns = cfg.count("patterns", 5);
  const auto quantiles = cfg.numbers("quantiles", {0.9, 0.99});
  const auto max_latency = static_cast<std::uint32_t>(cfg.count("max_latency", 4096));
  SimConfig sim;
  GeometrySpec geo;
  geo.kind = "lattice_triangular";
  geo.pitch = std::sqrt(3.0);
  sim.geometry = read_geometry(cfg, "geometry", geo);
  sim.side = cfg.number("side", 26.0 * std::sqrt(3.0));
  sim.image_shells = static_cast<int>(cfg.count("image_shells", 1));
  Section tandem = cfg.child("tandem");
  const auto hops = static_cast<unsigned>(tandem.count("hops", 5));
  const ArrivalCurve curve{tandem.number("sigma", 2.0), tandem.number("rho", 0.1)};
  const double granularity = tandem.number("granularity", 0.0);
  cfg.adopt("tandem", tandem);
  cfg.finish();
  for (double q : quantiles) {
    if (!(q > 0.0 && q < 1.0)) throw SchemaError("quantiles: values must lie in (0, 1)");
  }

  sim.pathloss = sc.pathloss;
  sim.fading = sc.fading;
  sim.tau = sc.tau;
  sim.noise = sc.noise;
  sim.realizations = patterns;
  sim.seed = ctx.seed();
  checked("network", [&] {
    sim.validate();
    return 0;
  });

  double theta = 0.0;
  if (theta_db_opt) {
    theta = db_to_linear(*theta_db_opt);
  } else {
    const double db = crossing_db([&](double x) { return zeta(sc, db_to_linear(x)).value; }, zeta_target);
    if (!std::isfinite(db)) throw std::domain_error("zeta never reaches the target");
    theta = db_to_linear(db);
  }
  const auto arrivals = checked("lambda", [&] { return ArrivalProcess::bernoulli(lambda); });
  const auto bound = wireless_queue_bound(sc, theta, arrivals, max_latency);

  std::vector<std::string> cols = {"pattern", "link_reliability", "mean_queue", "stable"};
  for (double q : quantiles) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "simulated_q%g", q);
    cols.emplace_back(buf);
    std::snprintf(buf, sizeof buf, "bound_q%g", q);
    cols.emplace_back(buf);
  }
  Table table(cols);
  bool dominated = bound.guaranteed;
  if (bound.guaranteed) {
    for (std::size_t r = 0; r < patterns; ++r) {
      const auto rel = link_reliabilities(sim, r, theta);
      const double p = *std::min_element(rel.begin(), rel.end());
      QueueOptions opt;
      opt.record_trace = false;
      const auto res = simulate_geo_queue(arrivals, p, slots, derive_seed(ctx.seed(), "queue", r), opt);
      std::vector<json> row = {r, p, res.mean_queue, res.stable};
      for (double q : quantiles) {
        const auto s = res.latency_quantile(q);
        const auto b = bound.latency_quantile(q);
        dominated = dominated && s <= b;
        row.emplace_back(s);
        row.emplace_back(b);
      }
      table.add_row(row);
    }
  }
  ctx.write_table("latency", table);

  LinkScenario plain = sc;
  plain.fading = FadingModel::none();
  const Threshold floor = stability_threshold(plain);
  json tandem_json = {{"hops", hops}, {"sigma", curve.sigma_star}, {"rho", curve.rho_star}};
  if (!floor.unbounded && curve.rho_star < floor.value) {
    tandem_json["delay_bound_slots"] = tandem_delay_bound(floor.value, hops, curve, granularity);
  } else {
    tandem_json["delay_bound_slots"] = nullptr;
  }
  ctx.write_json("summary.json", {{"theta_db", linear_to_db(theta)},
                                  {"bound", bound.to_json()},
                                  {"no_fading_rate_floor", nullable(floor.value)},
                                  {"tandem", tandem_json},
                                  {"dominated", dominated}});
  return dominated ? kOk : kDominance;
}

int run_graph(Section& cfg, RunContext& ctx) {
  GeometrySpec geo;
  geo.kind = "lattice_square";
  geo.pitch = 1.2;
  geo = read_geometry(cfg, "geometry", geo);
  const double side = cfg.number("side", 40.0);
  const double tau = cfg.number("tau", 1.0);
  const BallParams ball = read_ball(cfg, "ball", 0.5 * geo.pitch);
  const PathLossModel l = read_pathloss(cfg, "pathloss", "power:alpha=4");
  const double noise = cfg.number("noise", 0.0);
  const FadingModel fading = read_fading(cfg, "fading", "none");
  const bool explicit_theta = cfg.has("theta_db");
  const auto theta_list = cfg.numbers("theta_db", {});
  const auto offsets = cfg.numbers("theta_offsets_db", {-6.0, 0.0, 6.0, 12.0, 24.0, 36.0});
  cfg.finish();

  const double floor = checked("ball", [&] { return backbone_sinr_floor(ball, l, tau, noise); });
  const double floor_db = linear_to_db(floor);
  std::vector<double> theta_db = theta_list;
  if (!explicit_theta) {
    for (double o : offsets) theta_db.push_back(floor_db + o);
  }
  if (theta_db.empty()) throw SchemaError("theta_db: no thresholds given");
  std::vector<double> thetas;
  for (double db : theta_db) thetas.push_back(db_to_linear(db));

  const Window w = checked("side", [&] { return Window(side); });
  const auto p = generate_geometry(geo, w, derive_seed(ctx.seed(), "graph"));
  const auto graphs =
      build_sinr_graphs(p, thetas, l, noise, fading, derive_seed(ctx.seed(), "graph-fading"),
                        ctx.threads());
  std::optional<Backbone> bb;
  json backbone_error = nullptr;
  try {
    bb = extract_backbone(p, tau, nullptr);
  } catch (const BackboneError& e) {
    backbone_error = e.what();
  }

  Table perc({"theta_db", "edges", "components", "largest_component_fraction",
              "neighbor_edge_probability"});
  bool dominated = true;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto m = percolation_metrics(graphs[i], bb ? &*bb : nullptr);
    perc.add_row({theta_db[i], graphs[i].edges.size(), m.components, m.largest_component_fraction,
                  m.neighbor_edge_probability ? json(*m.neighbor_edge_probability) : json()});
    if (!fading.has_density() && bb && thetas[i] <= floor) {
      dominated = dominated && m.neighbor_edge_probability.value_or(0.0) == 1.0;
    }
  }
  ctx.write_table("percolation", perc);

  // Edge list at the threshold nearest the backbone floor.
  std::size_t pick = 0;
  for (std::size_t i = 1; i < theta_db.size(); ++i) {
    if (std::abs(theta_db[i] - floor_db) < std::abs(theta_db[pick] - floor_db)) pick = i;
  }
  Table edges({"a", "b", "sinr_ab", "sinr_ba"});
  for (const auto& e : graphs[pick].edges) edges.add_row({e.a, e.b, e.sinr_ab, e.sinr_ba});
  ctx.write_table("edges", edges);
  if (bb) {
    Table reps({"i", "j", "node", "x", "y"});
    for (std::size_t j = 0; j < bb->grid_y; ++j) {
      for (std::size_t i = 0; i < bb->grid_x; ++i) {
        const std::size_t node = bb->representative[j * bb->grid_x + i];
        reps.add_row({i, j, node, p[node].x, p[node].y});
      }
    }
    ctx.write_table("backbone", reps);
  }
  ctx.write_json("summary.json", {{"points", p.size()},
                                  {"sinr_floor", floor},
                                  {"sinr_floor_db", floor_db},
                                  {"edge_export_theta_db", theta_db[pick]},
                                  {"backbone_periodic", bb ? json(bb->periodic) : json()},
                                  {"backbone_error", backbone_error},
                                  {"dominated", dominated}});
  return dominated ? kOk : kDominance;
}

int run_cellular(Section& cfg, RunContext& ctx) {
  GeometrySpec bs_geo;
  bs_geo.kind = "perturbed_square";
  bs_geo.pitch = 2.0;
  bs_geo.displacement = 0.25;
  bs_geo = read_geometry(cfg, "base_stations", bs_geo);
  GeometrySpec user_geo;
  user_geo.kind = "perturbed_square";
  user_geo.pitch = 1.0;
  user_geo.displacement = 0.25;
  user_geo = read_geometry(cfg, "users", user_geo);
  const double side = cfg.number("side", 40.0);
  const std::size_t reals = cfg.count("realizations", 3);
  const double default_h = 0.5 * (bs_geo.pitch - 2.0 * bs_geo.displacement);
  if (bs_geo.kind != "perturbed_square" && !cfg.has("ball")) {
    throw SchemaError("ball: required unless base stations are a perturbed lattice");
  }
  const BallParams ball = read_ball(cfg, "ball", default_h);
  const PathLossModel l = read_pathloss(cfg, "pathloss", "power:alpha=4");
  const double noise = cfg.number("noise", 0.0);
  const double tau = cfg.number("tau", bs_geo.pitch / std::numbers::sqrt2 + bs_geo.displacement);
  const std::size_t fixed_k = cfg.count("K", 0);
  const double max_radius = cfg.number("max_radius", 8.0);
  const double scale = rate_scale(cfg);
  cfg.finish();

  LinkScenario sc;
  sc.ball = ball;
  sc.pathloss = l;
  sc.noise = noise;
  sc.tau = tau;
  sc.fading = FadingModel::none();
  checked("scenario", [&] {
    sc.validate();
    return 0;
  });
  const Window w = checked("side", [&] { return Window(side); });
  Table table({"realization", "users", "max_load", "K", "ball_regulated", "rate_floor", "min_rate",
               "mean_rate", "users_below_floor"});
  bool ok = true;
  for (std::size_t r = 0; r < reals; ++r) {
    const auto bs = generate_geometry(bs_geo, w, derive_seed(ctx.seed(), "base-stations", r));
    const auto users = generate_geometry(user_geo, w, derive_seed(ctx.seed(), "users", r));
    ProbeSpec probes = ProbeSpec::strong(0.0, std::min(max_radius, w.half_side()));
    probes.threads = ctx.threads();
    const bool regulated = verify_ball(bs, ball, probes).holds;
    const auto rates = simulate_cellular_rates(bs, users, l, noise);
    const std::size_t K = fixed_k > 0 ? fixed_k : rates.max_load;
    json floor_value = nullptr;
    std::size_t below = 0;
    double min_rate = kInfinity;
    double sum = 0.0;
    for (double v : rates.rate) {
      min_rate = std::min(min_rate, v);
      sum += v;
    }
    try {
      const auto floor = cellular_rate_floor(bs, users, K, sc);
      floor_value = scale * floor.rate_floor;
      for (double v : rates.rate) below += v < floor.rate_floor ? 1 : 0;
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    ok = ok && regulated && below == 0;
    table.add_row({r, users.size(), rates.max_load, K, regulated, floor_value,
                   nullable(scale * min_rate),
                   rates.rate.empty() ? json()
                                      : json(scale * sum / static_cast<double>(rates.rate.size())),
                   below});
  }
  ctx.write_table("cellular", table);
  ctx.write_json("summary.json", {{"tau", tau}, {"ball", ball.to_json()}, {"all_above_floor", ok}});
  return ok ? kOk : kDominance;
}

using Runner = int (*)(Section&, RunContext&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"generate", run_generate},     {"verify", run_verify},         {"bounds", run_bounds},
      {"sweep-fig3", run_sweep_fig3}, {"sweep-fig4", run_sweep_fig4}, {"queue", run_queue},
      {"graph", run_graph},           {"cellular", run_cellular}};
  return table;
}

// Small fixed configurations touching every experiment.
json selftest_plan() {
  return {
      {"generate", {{"geometry", {{"kind", "matern2"}, {"intensity", 1.0}, {"hardcore_distance", 0.5}}},
                    {"side", 20.0}, {"bipolar_tau", 0.5}}},
      {"verify", {{"side", 30.0}, {"realizations", 2}, {"max_radius", 6.0}}},
      {"bounds", {{"theta_db", {{"from", -10.0}, {"to", 10.0}, {"step", 5.0}}}}},
      {"sweep-fig3", {{"realizations", 2}, {"theta_db", {{"from", -20.0}, {"to", 20.0}, {"step", 5.0}}}}},
      {"sweep-fig4", {{"realizations", 1}, {"links_per_realization", 100}}},
      {"queue", {{"patterns", 2}, {"slots", 20000}}},
      {"graph", {{"side", 24.0}}},
      {"cellular", {{"realizations", 1}, {"side", 20.0}}},
  };
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"generate", "verify",     "bounds", "sweep-fig3",
                                                 "sweep-fig4", "queue", "graph", "cellular",
                                                 "selftest"};
  return names;
}

int run_experiment(const std::string& name, json config, const std::filesystem::path& out,
                   const Overrides& overrides) {
  if (!config.is_object()) throw SchemaError("configuration must be a JSON object");
  if (overrides.seed) config["seed"] = *overrides.seed;
  if (overrides.threads) config["threads"] = *overrides.threads;
  if (overrides.format) config["format"] = *overrides.format;

  Section top(config, "");
  const std::string declared = top.text("experiment", name);
  if (declared != name) {
    throw SchemaError("configuration is for '" + declared + "', not '" + name + "'");
  }
  const std::uint64_t seed = top.count("seed", 1);
  const auto threads = static_cast<unsigned>(top.count("threads", 1));
  const std::string format = top.text("format", "csv");
  if (format != "csv" && format != "json") throw SchemaError("format: expected csv or json");

  const auto start = std::chrono::steady_clock::now();
  RunContext ctx(out, seed, threads, format);
  int status = kOk;
  if (name == "selftest") {
    Section plan = top.child("plan");
    plan.finish();
    Table table({"experiment", "status"});
    const json plan_cfg = selftest_plan();
    for (const auto& [sub, sub_cfg] : plan_cfg.items()) {
      Overrides o;
      o.seed = seed;
      o.threads = threads;
      o.format = format;
      const int rc = run_experiment(sub, sub_cfg, out / sub, o);
      table.add_row({sub, rc});
      status = std::max(status, rc);
    }
    top.finish();
    ctx.write_table("selftest", table);
  } else {
    const auto it = runners().find(name);
    if (it == runners().end()) throw SchemaError("unknown experiment: " + name);
    status = it->second(top, ctx);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const json resolved = top.resolved();
  json files = json::array();
  for (const auto& [file, digest] : ctx.outputs()) files.push_back({{"file", file}, {"fnv1a", digest}});
  json manifest = {{"manifest_version", 1},
                   {"experiment", name},
                   {"version", library_version()},
                   {"seed", seed},
                   {"config", resolved},
                   {"config_hash", hash_text(resolved.dump())},
                   {"outputs", files},
                   {"status", status},
                   {"wall_time_s", wall}};
  std::ofstream(out / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  return status;
}

}  // namespace snc::cli
