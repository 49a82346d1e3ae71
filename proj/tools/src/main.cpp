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

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiments.hpp"
#include "snc/report.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw snc::cli::SchemaError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw snc::cli::SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  // A manifest from an earlier run replays its resolved configuration.
  if (j.is_object() && j.contains("manifest_version") && j.contains("config")) {
    return j.at("config");
  }
  return j;
}

std::string default_out() {
  if (const char* env = std::getenv("SNC_OUT_DIR"); env && *env) return env;
  return "snc-out";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace snc::cli;
  CLI::App app{"Spatial network calculus toolkit"};
  app.set_version_flag("--version", snc::library_version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format;
  app.add_option("--config", config_path, "JSON configuration or manifest");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out, "Output directory (default $SNC_OUT_DIR or snc-out)");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* format_opt =
      app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));

  for (const auto& name : experiment_names()) {
    app.add_subcommand(name, "Run the " + name + " experiment")->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kSchema;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Overrides overrides;
  if (seed_opt->count() > 0) overrides.seed = seed;
  if (threads_opt->count() > 0) overrides.threads = threads;
  if (format_opt->count() > 0) overrides.format = format;

  try {
    const int rc = run_experiment(name, load_config(config_path), out.empty() ? default_out() : out,
                                  overrides);
    if (rc == kDominance) std::cerr << "snc: a dominance or regulation check failed\n";
    return rc;
  } catch (const SchemaError& e) {
    std::cerr << "snc: schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const std::invalid_argument& e) {
    std::cerr << "snc: invalid configuration: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "snc: numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
