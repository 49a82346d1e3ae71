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

namespace snc {

/// 2F1(a, 1; a + 1; z) for 0 < a < 1 and z < 1.
///
/// This is the only shape the interference closed forms need. The value equals
/// a * int_0^1 t^(a-1) / (1 - z t) dt. Absolute error is below 1e-12.
double hyp2f1_kernel(double a, double z);

/// General entry point; throws std::domain_error unless b = 1 and c = a + 1.
double hyp2f1_kernel(double a, double b, double c, double z);

}  // namespace snc
