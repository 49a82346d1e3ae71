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

#include "snc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "snc/hypergeometric.hpp"
#include "snc/quadrature.hpp"

namespace snc {
namespace {

constexpr double kQuadTol = 1e-12;
constexpr double kZetaQuantile = 1e-10;

bool closed_form_available(const LinkScenario& sc) {
  return sc.pathloss.kind() == PathLossModel::Kind::power_law && sc.pathloss.power() == 1 &&
         sc.pathloss.alpha() > 2.0;
}

// sigma log(1 + c) - style closed form shared by the Rayleigh and Nakagami cases:
// with l~(r) = -k log(1 - z l(r)) for r > 1, the rho and nu terms reduce to 2F1 kernels.
double power_law_transformed(const BallParams& b, double alpha, double head, double scale,
                             double z) {
  const double a1 = 1.0 - 1.0 / alpha;
  const double a2 = 1.0 - 2.0 / alpha;
  double v = b.sigma * head;
  if (b.rho != 0.0) v += b.rho * scale * alpha / (alpha - 1.0) * hyp2f1_kernel(a1, z);
  if (b.nu != 0.0) v += b.nu * scale * alpha / (alpha - 2.0) * hyp2f1_kernel(a2, z);
  return v;
}

double golden_min(const std::function<double(double)>& g, double lo, double hi, double* at) {
  constexpr double r = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  // The endpoints are candidates too; the minimum may sit on the boundary.
  double best_s = gc <= gd ? c : d;
  double best = std::min(gc, gd);
  for (const double e : {lo, hi}) {
    const double ge = g(e);
    if (ge < best) {
      best = ge;
      best_s = e;
    }
  }
  if (at != nullptr) *at = best_s;
  return best;
}

// Minimizes a function assumed convex; if a coarse grid contradicts convexity
// the search restarts from the best grid cell.
double convex_min(const std::function<double(double)>& g, double lo, double hi, double* at,
                  bool* fallback) {
  constexpr int kGrid = 9;
  double vals[kGrid];
  for (int i = 0; i < kGrid; ++i) vals[i] = g(lo + (hi - lo) * i / (kGrid - 1));
  bool convex = true;
  for (int i = 1; i + 1 < kGrid; ++i) {
    const double second = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
    if (second < -1e-9 * (1.0 + std::abs(vals[i]))) convex = false;
  }
  if (fallback != nullptr) *fallback = !convex;
  if (convex) return golden_min(g, lo, hi, at);
  const int k = static_cast<int>(std::min_element(vals, vals + kGrid) - vals);
  const double a = lo + (hi - lo) * std::max(0, k - 1) / (kGrid - 1);
  const double b = lo + (hi - lo) * std::min(kGrid - 1, k + 1) / (kGrid - 1);
  return golden_min(g, a, b, at);
}

double chernoff_s_max(const LinkScenario& sc) {
  return 0.999 * sc.fading.s_star() / sc.pathloss(0.0);
}

}  // namespace

void LinkScenario::validate() const {
  ball.validate();
  if (!(tau > 0.0)) throw std::invalid_argument("dipole distance must be positive");
  if (!(noise >= 0.0)) throw std::invalid_argument("noise must be nonnegative");
  if (!pathloss.integrable()) throw std::invalid_argument("path loss is not integrable in the plane");
}

nlohmann::json LinkScenario::to_json() const {
  return {{"ball", ball.to_json()}, {"pathloss", pathloss.to_json()}, {"tau", tau},
          {"noise", noise}, {"fading", fading.name()}};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }

double a_ell(const BallParams& params, const PathLossModel& l) {
  if (!l.integrable()) throw std::domain_error("path loss is not integrable in the plane");
  return shot_noise_bound(params, l, kInfinity);
}

double a_transformed(const BallParams& params, const std::function<double(double)>& f,
                     std::span<const double> breakpoints, double R) {
  double v = params.sigma * f(0.0);
  if (params.rho != 0.0) v += params.rho * integrate_piecewise(f, 0.0, R, breakpoints, kQuadTol).value;
  if (params.nu != 0.0) {
    v += 2.0 * params.nu *
         integrate_piecewise([&](double r) { return r * f(r); }, 0.0, R, breakpoints, kQuadTol)
             .value;
  }
  return v;
}

double a_ell_quadrature(const BallParams& params, const PathLossModel& l) {
  const auto cuts = l.breakpoints();
  return a_transformed(params, [&](double r) { return l(r); }, cuts);
}

NoFadingBounds no_fading_bounds(const LinkScenario& s) {
  s.validate();
  NoFadingBounds out;
  out.a_ell = a_ell(s.ball, s.pathloss);
  const double lt = s.pathloss(s.tau);
  out.interference_ub = out.a_ell - lt;
  out.degenerate = out.interference_ub < 0.0;
  const double denom = out.interference_ub + s.noise;
  if (out.degenerate || denom <= 0.0) {
    out.sinr_lb = kInfinity;
    out.rate_lb = kInfinity;
    out.degenerate = true;
    return out;
  }
  out.sinr_lb = lt / denom;
  out.rate_lb = std::log1p(out.sinr_lb);
  return out;
}

double a_tilde_ell(const LinkScenario& sc, double s, double R) {
  if (s == 0.0) return 0.0;
  const FadingModel& h = sc.fading;
  const PathLossModel& l = sc.pathloss;
  if (!(s >= 0.0 && s * l(0.0) < h.s_star())) {
    throw std::domain_error("Chernoff parameter outside the exponential-moment domain");
  }
  const auto cuts = l.breakpoints();
  return a_transformed(sc.ball, [&](double r) { return h.log_laplace_neg(s * l(r)); }, cuts, R);
}

double a_tilde_ell_closed(const LinkScenario& sc, double s) {
  if (!closed_form_available(sc) || sc.fading.kind() == FadingModel::Kind::none) {
    throw std::domain_error("closed form needs a power law with Rayleigh or Nakagami fading");
  }
  if (s == 0.0) return 0.0;
  const double m = sc.fading.m();
  if (!(s >= 0.0 && s < m)) throw std::domain_error("Chernoff parameter outside the domain");
  const double head = -m * std::log1p(-s / m);
  return power_law_transformed(sc.ball, sc.pathloss.alpha(), head, s, s / m);
}

double a_tilde_ell_fast(const LinkScenario& sc, double s) {
  if (closed_form_available(sc) && sc.fading.kind() != FadingModel::Kind::none) {
    return a_tilde_ell_closed(sc, s);
  }
  if (sc.fading.kind() == FadingModel::Kind::none) {
    // log E exp(s l) = s l, so A~ is s A_l.
    return s * a_ell(sc.ball, sc.pathloss);
  }
  return a_tilde_ell(sc, s);
}

double a_tilde_rayleigh_closed(const LinkScenario& sc, double theta) {
  if (!closed_form_available(sc)) throw std::domain_error("closed form needs a power law");
  if (theta == 0.0) return 0.0;
  const double c = theta / sc.pathloss(sc.tau);
  return power_law_transformed(sc.ball, sc.pathloss.alpha(), std::log1p(c), c, -c);
}

double a_tilde_rayleigh_quadrature(const LinkScenario& sc, double theta) {
  const double c = theta / sc.pathloss(sc.tau);
  const PathLossModel& l = sc.pathloss;
  const auto cuts = l.breakpoints();
  return a_transformed(sc.ball, [&](double r) { return std::log1p(c * l(r)); }, cuts);
}

double interference_tail_markov(const LinkScenario& sc, double x) {
  if (!(x > 0.0)) return 1.0;
  const double mean_ub = a_ell(sc.ball, sc.pathloss) - sc.pathloss(sc.tau);
  return std::clamp(mean_ub / x, 0.0, 1.0);
}

namespace {

double variance_bound(const LinkScenario& sc) {
  const double m2 = sc.fading.second_moment();
  if (!std::isfinite(m2)) throw std::domain_error("fading second moment is not finite");
  const PathLossModel l2 = sc.pathloss.squared();
  const double lt = sc.pathloss(sc.tau);
  return (m2 - 1.0) * (a_ell(sc.ball, l2) - lt * lt);
}

}  // namespace

double interference_tail_chebyshev(const LinkScenario& sc, double x) {
  const double shift = a_ell(sc.ball, sc.pathloss) - sc.pathloss(sc.tau);
  if (!(x > shift)) return 1.0;
  const double dx = x - shift;
  return std::clamp(variance_bound(sc) / (dx * dx), 0.0, 1.0);
}

double interference_tail_chebyshev_centered(const LinkScenario& sc, double x) {
  if (!(x > 0.0)) return 1.0;
  return std::clamp(variance_bound(sc) / (x * x), 0.0, 1.0);
}

ChernoffResult interference_tail_chernoff(const LinkScenario& sc, double x) {
  if (sc.fading.kind() == FadingModel::Kind::none) {
    // Deterministic interference never exceeds A_l - l(tau).
    const double ub = a_ell(sc.ball, sc.pathloss) - sc.pathloss(sc.tau);
    return {x > ub ? 0.0 : 1.0, 0.0, false};
  }
  const double lt = sc.pathloss(sc.tau);
  const auto exponent = [&](double s) {
    if (s == 0.0) return 0.0;
    return -s * x + a_tilde_ell_fast(sc, s) - sc.fading.log_laplace_neg(s * lt);
  };
  ChernoffResult out;
  const double best = convex_min(exponent, 0.0, chernoff_s_max(sc), &out.s_opt, &out.used_fallback);
  out.value = std::min(1.0, std::exp(std::min(0.0, best)));
  return out;
}

ZetaResult zeta(const LinkScenario& sc, double theta) {
  sc.validate();
  if (!sc.fading.has_density()) {
    throw std::domain_error("zeta needs a fading density; use no_fading_bounds instead");
  }
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  const double lt = sc.pathloss(sc.tau);
  const double a = a_ell(sc.ball, sc.pathloss);
  const double s_max = chernoff_s_max(sc);

  // F(s) = A~(s) - l~_s(tau); the Chernoff exponent at level y is F(s) - s y.
  const auto F = [&](double s) {
    if (s == 0.0) return 0.0;
    return a_tilde_ell_fast(sc, s) - sc.fading.log_laplace_neg(s * lt);
  };
  bool nonconvex = false;
  {
    double dummy = 0.0;
    convex_min(F, 0.0, s_max, &dummy, &nonconvex);
  }
  const auto inner = [&](double y) {
    const auto g = [&](double s) { return F(s) - s * y; };
    double at = 0.0;
    const double best = nonconvex ? convex_min(g, 0.0, s_max, &at, nullptr)
                                  : golden_min(g, 0.0, s_max, &at);
    return std::min(0.0, best);
  };

  ZetaResult out;
  const double x_kink = theta * (a - lt + sc.noise) / lt;
  const double x_lo = std::max(theta * sc.noise / lt, x_kink);
  const double q = sc.fading.upper_quantile(kZetaQuantile);
  out.truncated_mass = kZetaQuantile;
  if (x_lo >= q) {
    out.value = 0.0;
    out.error_bound = out.truncated_mass;
    return out;
  }
  const auto integrand = [&](double x) {
    const double y = x * lt / theta - sc.noise;
    return sc.fading.pdf(x) * -std::expm1(inner(y));
  };
  const QuadResult r = integrate(integrand, x_lo, q, 1e-9, 12);
  out.value = std::clamp(r.value, 0.0, 1.0);
  out.error_bound = r.error + out.truncated_mass;
  return out;
}

double rayleigh_reliability_lb(const LinkScenario& sc, double theta) {
  if (sc.fading.kind() != FadingModel::Kind::rayleigh) {
    throw std::domain_error("the Rayleigh floor needs Rayleigh fading");
  }
  if (theta <= 0.0) return 1.0;
  const double lt = sc.pathloss(sc.tau);
  const double a = closed_form_available(sc) ? a_tilde_rayleigh_closed(sc, theta)
                                             : a_tilde_rayleigh_quadrature(sc, theta);
  const double log_v = -theta * sc.noise / lt - a + std::log1p(theta);
  return std::min(1.0, std::exp(log_v));
}

double reliability_lb(const LinkScenario& sc, double theta) {
  if (sc.fading.kind() == FadingModel::Kind::none) {
    const auto nf = no_fading_bounds(sc);
    return theta < nf.sinr_lb ? 1.0 : 0.0;
  }
  const double z = zeta(sc, theta).value;
  if (sc.fading.kind() == FadingModel::Kind::rayleigh) {
    return std::max(z, rayleigh_reliability_lb(sc, theta));
  }
  return z;
}

Inversion invert_rayleigh_bound(const LinkScenario& sc, double target) {
  Inversion out;
  if (target >= 1.0) {
    out.unattainable = true;
    return out;
  }
  if (!(target > 0.0)) {
    out.theta = kInfinity;
    out.capped = true;
    return out;
  }
  constexpr double kCap = 1e12;
  double lo = 0.0;
  double hi = 1.0;
  while (rayleigh_reliability_lb(sc, hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kCap) {
      out.theta = kCap;
      out.capped = true;
      return out;
    }
  }
  while (hi - lo > 1e-11 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (rayleigh_reliability_lb(sc, mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.theta = lo;
  return out;
}

double ergodic_rate_lb(const LinkScenario& sc, ErgodicMethod method) {
  sc.validate();
  if (sc.fading.kind() == FadingModel::Kind::none) {
    const auto nf = no_fading_bounds(sc);
    if (nf.degenerate) throw std::domain_error("degenerate scenario: unbounded rate floor");
    return nf.rate_lb;
  }
  bool rayleigh = sc.fading.kind() == FadingModel::Kind::rayleigh;
  if (method == ErgodicMethod::zeta) rayleigh = false;
  if (method == ErgodicMethod::rayleigh && !rayleigh) {
    throw std::domain_error("the Rayleigh floor needs Rayleigh fading");
  }
  const auto lb = [&](double t) {
    const double theta = std::expm1(t);
    if (theta <= 0.0) return 1.0;
    return rayleigh ? rayleigh_reliability_lb(sc, theta) : zeta(sc, theta).value;
  };
  double t_max = 1.0;
  while (lb(t_max) > 1e-12) {
    t_max += 1.0;
    if (t_max > 400.0) throw std::runtime_error("ergodic integrand does not decay");
  }
  const QuadResult r = integrate(lb, 0.0, t_max, rayleigh ? 1e-11 : 1e-8, rayleigh ? 20 : 8);
  return r.value;
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario.to_json();
  j["a_ell"] = {{"value", no_fading.a_ell}, {"formula", "ball-shot-noise-bound"}};
  j["interference_ub"] = {{"value", no_fading.interference_ub},
                          {"formula", "no-fading-interference-bound"}};
  j["sinr_lb"] = {{"value", no_fading.sinr_lb}, {"formula", "no-fading-sinr-floor"}};
  j["rate_lb"] = {{"value", no_fading.rate_lb}, {"formula", "no-fading-rate-floor"},
                  {"unit", "nats"}};
  j["degenerate"] = no_fading.degenerate;
  j["zeta"] = {{"theta_db", theta_db}, {"value", zeta}, {"formula", "zeta-reliability-floor"}};
  j["rayleigh_lb"] = {{"theta_db", theta_db}, {"value", rayleigh},
                      {"formula", "rayleigh-reliability-floor"}};
  j["ergodic_rate_lb"] = {{"value", ergodic_rate_lb}, {"formula", "ergodic-rate-floor"},
                          {"unit", "nats"}};
  return j;
}

BoundReport make_bound_report(const LinkScenario& sc, const std::vector<double>& theta_db) {
  BoundReport rep;
  rep.scenario = sc;
  rep.no_fading = no_fading_bounds(sc);
  rep.theta_db = theta_db;
  if (sc.fading.has_density()) {
    for (const double db : theta_db) rep.zeta.push_back(zeta(sc, db_to_linear(db)).value);
  }
  if (sc.fading.kind() == FadingModel::Kind::rayleigh) {
    for (const double db : theta_db) {
      rep.rayleigh.push_back(rayleigh_reliability_lb(sc, db_to_linear(db)));
    }
  }
  rep.ergodic_rate_lb = ergodic_rate_lb(sc);
  return rep;
}

}  // namespace snc
