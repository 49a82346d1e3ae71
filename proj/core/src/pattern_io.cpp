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

#include "snc/pattern_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace snc {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_pattern(std::ostream& out, const PointPattern& p) {
  nlohmann::json meta = {{"side", p.window().side()},
                         {"count", p.size()},
                         {"marks", p.has_marks()},
                         {"generator", p.info().generator},
                         {"params", p.info().params},
                         {"seed", p.info().seed}};
  out << "# " << meta.dump() << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << format_double(p[i].x) << ',' << format_double(p[i].y);
    if (p.has_marks()) out << ',' << format_double(p.marks()[i]);
    out << '\n';
  }
}

namespace {

double parse_field(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed numeric field: " + std::string(s));
  }
  return v;
}

}  // namespace

PointPattern read_pattern(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("pattern file must start with a '# {json}' header");
  }
  const nlohmann::json meta = nlohmann::json::parse(line.substr(2));
  const Window window(meta.at("side").get<double>());
  const bool marked = meta.value("marks", false);
  std::vector<Point> pts;
  std::vector<double> marks;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != (marked ? 3U : 2U)) throw std::runtime_error("bad record: " + line);
    pts.push_back({parse_field(fields[0]), parse_field(fields[1])});
    if (marked) marks.push_back(parse_field(fields[2]));
  }
  if (meta.contains("count") && meta["count"].get<std::size_t>() != pts.size()) {
    throw std::runtime_error("record count does not match header");
  }
  PatternInfo info{meta.value("generator", std::string{}),
                   meta.value("params", nlohmann::json::object()),
                   meta.value("seed", std::uint64_t{0})};
  return PointPattern(window, std::move(pts), std::move(marks), std::move(info));
}

void save_pattern(const std::string& path, const PointPattern& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_pattern(out, p);
}

PointPattern load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_pattern(in);
}

}  // namespace snc
