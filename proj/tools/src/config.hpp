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
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snc/bounds.hpp"
#include "snc/montecarlo.hpp"

namespace snc::cli {

/// Malformed or unknown configuration content; maps to exit code 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One JSON object of the configuration. Every key read is recorded with its
/// effective value so the resolved configuration can be written back out, and
/// finish() rejects keys that were never read.
class Section {
 public:
  Section(nlohmann::json source, std::string path);

  double number(const std::string& key, double fallback);
  std::optional<double> optional_number(const std::string& key);
  std::uint64_t count(const std::string& key, std::uint64_t fallback);
  std::string text(const std::string& key, const std::string& fallback);
  bool flag(const std::string& key, bool fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  /// Either an explicit list or {"from", "to", "step"}.
  std::vector<double> grid(const std::string& key, double from, double to, double step);
  bool has(const std::string& key) const;

  Section child(const std::string& key);
  /// Stores a finished child's resolved values.
  void adopt(const std::string& key, Section& child);

  void finish();
  const nlohmann::json& resolved() const noexcept { return resolved_; }

 private:
  const nlohmann::json* lookup(const std::string& key);
  std::string where(const std::string& key) const;

  nlohmann::json source_;
  std::string path_;
  std::set<std::string> used_;
  nlohmann::json resolved_ = nlohmann::json::object();
};

GeometrySpec read_geometry(Section& parent, const std::string& key, const GeometrySpec& fallback);
BallParams read_ball(Section& parent, const std::string& key, double default_hardcore);
LinkScenario read_scenario(Section& parent, const std::string& key,
                           const std::string& pathloss = "power:alpha=4",
                           const std::string& fading = "rayleigh");
PathLossModel read_pathloss(Section& s, const std::string& key, const std::string& fallback);
FadingModel read_fading(Section& s, const std::string& key, const std::string& fallback);

}  // namespace snc::cli
