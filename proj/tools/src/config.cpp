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

#include "config.hpp"

#include <cmath>

namespace snc::cli {

Section::Section(nlohmann::json source, std::string path)
    : source_(std::move(source)), path_(std::move(path)) {
  if (source_.is_null()) source_ = nlohmann::json::object();
  if (!source_.is_object()) throw SchemaError(path_ + ": expected an object");
}

std::string Section::where(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool Section::has(const std::string& key) const {
  return source_.contains(key) && !source_.at(key).is_null();
}

const nlohmann::json* Section::lookup(const std::string& key) {
  used_.insert(key);
  if (!has(key)) return nullptr;
  return &source_.at(key);
}

double Section::number(const std::string& key, double fallback) {
  const auto* v = lookup(key);
  double out = fallback;
  if (v != nullptr) {
    if (!v->is_number()) throw SchemaError(where(key) + ": expected a number");
    out = v->get<double>();
  }
  if (!std::isfinite(out)) throw SchemaError(where(key) + ": must be finite");
  resolved_[key] = out;
  return out;
}

std::optional<double> Section::optional_number(const std::string& key) {
  const auto* v = lookup(key);
  if (v == nullptr) {
    resolved_[key] = nullptr;
    return std::nullopt;
  }
  if (!v->is_number()) throw SchemaError(where(key) + ": expected a number");
  resolved_[key] = v->get<double>();
  return v->get<double>();
}

std::uint64_t Section::count(const std::string& key, std::uint64_t fallback) {
  const auto* v = lookup(key);
  std::uint64_t out = fallback;
  if (v != nullptr) {
    const bool integral = v->is_number_integer() ||
                          (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>());
    if (!integral || v->get<double>() < 0.0) {
      throw SchemaError(where(key) + ": expected a nonnegative integer");
    }
    out = v->is_number_unsigned() ? v->get<std::uint64_t>()
                                  : static_cast<std::uint64_t>(v->get<double>());
  }
  resolved_[key] = out;
  return out;
}

std::string Section::text(const std::string& key, const std::string& fallback) {
  const auto* v = lookup(key);
  std::string out = fallback;
  if (v != nullptr) {
    if (!v->is_string()) throw SchemaError(where(key) + ": expected a string");
    out = v->get<std::string>();
  }
  resolved_[key] = out;
  return out;
}

bool Section::flag(const std::string& key, bool fallback) {
  const auto* v = lookup(key);
  bool out = fallback;
  if (v != nullptr) {
    if (!v->is_boolean()) throw SchemaError(where(key) + ": expected true or false");
    out = v->get<bool>();
  }
  resolved_[key] = out;
  return out;
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
  const auto* v = lookup(key);
  std::vector<double> out = fallback;
  if (v != nullptr) {
    if (!v->is_array()) throw SchemaError(where(key) + ": expected a list of numbers");
    out.clear();
    for (const auto& x : *v) {
      if (!x.is_number()) throw SchemaError(where(key) + ": expected a list of numbers");
      out.push_back(x.get<double>());
    }
  }
  resolved_[key] = out;
  return out;
}

std::vector<double> Section::grid(const std::string& key, double from, double to, double step) {
  const auto* v = lookup(key);
  if (v != nullptr && v->is_array()) {
    used_.erase(key);
    return numbers(key, {});
  }
  if (v != nullptr) {
    Section g(*v, where(key));
    from = g.number("from", from);
    to = g.number("to", to);
    step = g.number("step", step);
    g.finish();
  }
  if (!(step > 0.0) || to < from) throw SchemaError(where(key) + ": empty or invalid grid");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(from + static_cast<double>(i) * step);
  resolved_[key] = out;
  return out;
}

Section Section::child(const std::string& key) {
  const auto* v = lookup(key);
  return Section(v != nullptr ? *v : nlohmann::json::object(), where(key));
}

void Section::adopt(const std::string& key, Section& child) {
  child.finish();
  resolved_[key] = child.resolved();
}

void Section::finish() {
  for (const auto& [key, value] : source_.items()) {
    if (!used_.contains(key)) throw SchemaError("unknown key: " + where(key));
  }
}

GeometrySpec read_geometry(Section& parent, const std::string& key, const GeometrySpec& fallback) {
  Section s = parent.child(key);
  GeometrySpec g;
  g.kind = s.text("kind", fallback.kind);
  g.pitch = s.number("pitch", fallback.pitch);
  g.intensity = s.number("intensity", fallback.intensity);
  g.hardcore_distance = s.number("hardcore_distance", fallback.hardcore_distance);
  g.displacement = s.number("displacement", fallback.displacement);
  parent.adopt(key, s);
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(key + ": " + e.what());
  }
  return g;
}

BallParams read_ball(Section& parent, const std::string& key, double default_hardcore) {
  Section s = parent.child(key);
  BallParams b;
  const auto h = s.optional_number("hardcore_distance");
  if (h) {
    if (s.has("sigma") || s.has("rho") || s.has("nu")) {
      throw SchemaError(key + ": give either hardcore_distance or sigma/rho/nu");
    }
    b = hardcore_params(*h);
  } else if (s.has("sigma") || s.has("rho") || s.has("nu")) {
    b.sigma = s.number("sigma", 0.0);
    b.rho = s.number("rho", 0.0);
    b.nu = s.number("nu", 0.0);
  } else {
    b = hardcore_params(default_hardcore);
  }
  parent.adopt(key, s);
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(key + ": " + e.what());
  }
  return b;
}

PathLossModel read_pathloss(Section& s, const std::string& key, const std::string& fallback) {
  const std::string text = s.text(key, fallback);
  try {
    return PathLossModel::parse(text);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(key + ": " + e.what());
  }
}

FadingModel read_fading(Section& s, const std::string& key, const std::string& fallback) {
  const std::string text = s.text(key, fallback);
  try {
    return FadingModel::parse(text);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(key + ": " + e.what());
  }
}

LinkScenario read_scenario(Section& parent, const std::string& key, const std::string& pathloss,
                           const std::string& fading) {
  Section s = parent.child(key);
  LinkScenario sc;
  sc.ball = read_ball(s, "ball", 1.0);
  sc.pathloss = read_pathloss(s, "pathloss", pathloss);
  sc.tau = s.number("tau", 1.0);
  sc.noise = s.number("noise", 0.0);
  sc.fading = read_fading(s, "fading", fading);
  parent.adopt(key, s);
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(key + ": " + e.what());
  }
  return sc;
}

}  // namespace snc::cli
