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

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace snc {

/// Column-oriented result table with deterministic text rendering.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<nlohmann::json> row);
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<nlohmann::json>>& rows() const noexcept { return rows_; }

  std::string to_csv() const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<nlohmann::json>> rows_;
};

/// Hex FNV-1a 64 digest.
std::string hash_text(std::string_view text);

std::string library_version();

}  // namespace snc
