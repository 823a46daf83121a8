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
#include <string>
#include <vector>

#include "quosc/experiments.hpp"

namespace quosc {

enum class Scenario {
  revival,
  boosted,
  heating,
  entanglement,
  mimic,
  converge,
  couplings,
  selftest,
};

struct RunConfig {
  Scenario scenario;
  ProtocolConfig protocol;
  PhysicalParams physical;
  std::string output_path;  // empty: standard output
  std::vector<double> converge_dts = {1e-3, 1e-4, 1e-5, 1e-6};
};

struct ParseResult {
  int exit_code = 0;  // 0 ok, 2 usage error
  bool show_usage = false;
  std::string message;           // diagnostic for usage errors
  std::vector<RunConfig> config; // one entry when exit_code == 0
};

/// Parses --key=value flags, with --config=FILE supplying key=value lines
/// ('#' comments); flags override the file. Unknown keys, unparseable
/// values, and a missing scenario are usage errors (exit 2).
ParseResult parse_config(const std::vector<std::string>& args);

std::string usage_text();

/// Executes the scenario. Deterministic output: same config, same bytes.
/// Returns 0 on success, 1 on runtime/model errors (message on err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full front end: parse + run + usage handling. Returns the process exit
/// code (0 success, 1 runtime error, 2 usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace quosc
