// Copyright 2026 The quosc authors
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

namespace quosc {

/// Runs the invariant battery (trace duality, negativity on product states,
/// unitarity of the propagator, channel completeness and Choi invariance,
/// separability verdicts, conservation laws, integrator order, model laws)
/// at reduced sizes, printing one line per check. Returns the number of
/// failures. Deterministic: fixed seed.
int run_selftest(std::ostream& out);

}  // namespace quosc
