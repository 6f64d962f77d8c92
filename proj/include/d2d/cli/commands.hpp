// Copyright 2026 The d2dsim Authors
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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace d2d::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;      // unreadable or invalid input
inline constexpr int kExitViolation = 3;  // invariant or conformance failure

struct RunConfig {
  std::filesystem::path scenario;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s;
  std::filesystem::path out_dir;
  bool trace = true;
};

// Simulates, writes trace.txt (unless disabled) and metrics.csv to the
// output directory, and checks the trace invariants.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct ConformanceConfig {
  std::filesystem::path vectors;
  std::optional<double> pairing_window_ms;
};

int cmd_conformance(const ConformanceConfig& config, std::ostream& out, std::ostream& err);

// Per-entity message cost of each model on the scenario's workload, then the
// feature rows of those models. An empty model list prints the feature
// matrix only.
int cmd_compare(const std::filesystem::path& scenario, const std::vector<std::string>& models,
                std::ostream& out, std::ostream& err);

// Full command-line entry point.
int main(int argc, char** argv);

}  // namespace d2d::cli
