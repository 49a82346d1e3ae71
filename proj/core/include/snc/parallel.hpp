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

#include <cstddef>
#include <functional>

namespace snc {

/// Splits [0, n) into contiguous chunks and runs `body(begin, end)` on up to
/// `threads` workers (0 means hardware concurrency). Callers write results to
/// per-index slots and reduce afterwards in index order, so output never
/// depends on scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace snc
