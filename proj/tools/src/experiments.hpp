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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "snc/report.hpp"

namespace snc::cli {

enum ExitCode : int { kOk = 0, kSchema = 2, kNumeric = 3, kDominance = 4 };

/// Output sink for one experiment run.
class RunContext {
 public:
  RunContext(std::filesystem::path out, std::uint64_t seed, unsigned threads, std::string format);

  const std::filesystem::path& out() const noexcept { return out_; }
  std::uint64_t seed() const noexcept { return seed_; }
  unsigned threads() const noexcept { return threads_; }

  void write_text(const std::string& name, const std::string& content);
  /// Writes `<stem>.csv` or `<stem>.json` depending on the format.
  void write_table(const std::string& stem, const Table& table);
  void write_json(const std::string& name, const nlohmann::json& j);

  /// (file name, FNV-1a digest) for every artifact written, in write order.
  const std::vector<std::pair<std::string, std::string>>& outputs() const noexcept {
    return outputs_;
  }

 private:
  std::filesystem::path out_;
  std::uint64_t seed_;
  unsigned threads_;
  std::string format_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

/// Overrides from command-line flags, applied on top of the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> format;
};

const std::vector<std::string>& experiment_names();

/// Runs one experiment and writes its manifest. Throws SchemaError on bad
/// configuration; returns kOk or kDominance.
int run_experiment(const std::string& name, nlohmann::json config,
                   const std::filesystem::path& out, const Overrides& overrides);

}  // namespace snc::cli
