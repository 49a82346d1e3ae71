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

#include <iosfwd>
#include <string>

#include "snc/pointprocess.hpp"

namespace snc {

/// Text format: a `# {json}` metadata line, then one `x,y[,mark]` record per point.
void write_pattern(std::ostream& out, const PointPattern& p);
PointPattern read_pattern(std::istream& in);

void save_pattern(const std::string& path, const PointPattern& p);
PointPattern load_pattern(const std::string& path);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace snc
