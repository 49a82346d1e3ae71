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

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/fading.hpp"
#include "snc/pathloss.hpp"
#include "snc/regulation.hpp"

namespace snc {

/// One transmitter-receiver link inside a ball-regulated field of interferers.
struct LinkScenario {
  BallParams ball;
  PathLossModel pathloss = PathLossModel::power_law(4.0);
  double tau = 1.0;
  double noise = 0.0;
  FadingModel fading = FadingModel::rayleigh();

  void validate() const;
  nlohmann::json to_json() const;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// sigma l(0) + rho int l + 2 nu int r l, closed form per path loss kind.
double a_ell(const BallParams& params, const PathLossModel& l);
/// Same quantity by adaptive quadrature (oracle path).
double a_ell_quadrature(const BallParams& params, const PathLossModel& l);

/// sigma f(0) + rho int_0^R f + 2 nu int_0^R r f for a bounded non-increasing f.
double a_transformed(const BallParams& params, const std::function<double(double)>& f,
                     std::span<const double> breakpoints, double R = kInfinity);

struct NoFadingBounds {
  double a_ell = 0.0;
  double interference_ub = 0.0;
  double sinr_lb = 0.0;
  double rate_lb = 0.0;
  bool degenerate = false;
};
NoFadingBounds no_fading_bounds(const LinkScenario& s);

/// A for l~(r) = log L_h(-s l(r)) by quadrature, optionally truncated at R.
double a_tilde_ell(const LinkScenario& sc, double s, double R = kInfinity);
/// Hypergeometric closed form of the same quantity; power law with Rayleigh or Nakagami only.
double a_tilde_ell_closed(const LinkScenario& sc, double s);
/// Dispatches to the closed form when available, quadrature otherwise.
double a_tilde_ell_fast(const LinkScenario& sc, double s);

/// A for l~(r) = log(1 + theta l(r)/l(tau)).
double a_tilde_rayleigh_closed(const LinkScenario& sc, double theta);
double a_tilde_rayleigh_quadrature(const LinkScenario& sc, double theta);

double interference_tail_markov(const LinkScenario& sc, double x);
/// P(I > x) <= Var bound / (x - B)^2 for x beyond the mean bound B = A_l - l(tau).
double interference_tail_chebyshev(const LinkScenario& sc, double x);
/// P(|I - E[I | Phi]| >= x) <= Var bound / x^2.
double interference_tail_chebyshev_centered(const LinkScenario& sc, double x);

struct ChernoffResult {
  double value = 1.0;
  double s_opt = 0.0;
  bool used_fallback = false;
};
ChernoffResult interference_tail_chernoff(const LinkScenario& sc, double x);

struct ZetaResult {
  double value = 0.0;
  double error_bound = 0.0;
  double truncated_mass = 0.0;
};
ZetaResult zeta(const LinkScenario& sc, double theta);

double rayleigh_reliability_lb(const LinkScenario& sc, double theta);
/// Best available floor: max of zeta and the Rayleigh form under Rayleigh fading.
double reliability_lb(const LinkScenario& sc, double theta);

struct Inversion {
  double theta = 0.0;
  bool capped = false;
  bool unattainable = false;
};
Inversion invert_rayleigh_bound(const LinkScenario& sc, double target);

enum class ErgodicMethod { automatic, rayleigh, zeta };
/// int_0^inf LB(e^t - 1) dt in nats; automatic uses the Rayleigh form under Rayleigh fading.
double ergodic_rate_lb(const LinkScenario& sc, ErgodicMethod method = ErgodicMethod::automatic);

struct BoundReport {
  LinkScenario scenario;
  NoFadingBounds no_fading;
  std::vector<double> theta_db;
  std::vector<double> zeta;
  std::vector<double> rayleigh;
  double ergodic_rate_lb = 0.0;
  nlohmann::json to_json() const;
};
BoundReport make_bound_report(const LinkScenario& sc, const std::vector<double>& theta_db);

double db_to_linear(double db);
double linear_to_db(double v);

}  // namespace snc
