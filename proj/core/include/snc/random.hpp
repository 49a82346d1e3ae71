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
#include <random>
#include <string_view>

namespace snc {

using Engine = std::mt19937_64;

/// Derives an independent 64-bit seed for a named stream of a master seed.
///
/// Geometry, fading and per-realization streams are separated by name and
/// index so that adding draws to one stream never shifts another.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index = 0) noexcept;

Engine make_engine(std::uint64_t master, std::string_view stream, std::uint64_t index = 0);

/// Uniform double on [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) noexcept {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace snc
