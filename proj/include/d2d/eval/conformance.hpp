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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2d/core/message.hpp"
#include "d2d/core/trace.hpp"
#include "d2d/eval/scenario.hpp"

namespace d2d::eval {

// One expected message: kind plus sender and receiver entity classes
// ("ue", "enb", "mme", "hss", "pgw", "prose", "*" for broadcast).
struct VectorStep {
  MessageKind kind{};
  std::string src;
  std::string dst;
  std::string comment;

  std::string key() const;
};

// A frozen, ordered message-kind sequence. The observed window starts at
// the first send of `from` and spans as many sends as there are steps.
struct ConformanceVector {
  std::string name;
  std::filesystem::path scenario;  // resolved against the vector's directory
  MessageKind from{};
  std::vector<VectorStep> steps;
};

// Format, one item per line, '#' starts a comment:
//   scenario: <path to scenario JSON>
//   from: <MessageKind>
//   <MessageKind> <srcclass>-><dstclass>
// Throws SimError("invalid-vector") with the offending line.
ConformanceVector parse_vector(std::string_view text, std::string name = {});
ConformanceVector load_vector_file(const std::filesystem::path& path);
// All *.vec files in `dir`, sorted by name. Throws SimError("missing-vectors")
// if the directory does not exist or holds no vectors.
std::vector<ConformanceVector> load_vectors(const std::filesystem::path& dir);

struct ScenarioOverrides {
  std::optional<SimTime> pairing_window;
};

// Observed window of "Kind src->dst" keys.
std::vector<std::string> observed_sequence(std::span<const TraceRecord> trace, MessageKind from,
                                           std::size_t count);

struct ConformanceResult {
  std::string name;
  bool passed = false;
  std::size_t divergence = 0;  // first differing index when !passed
  std::string expected;        // key at `divergence`, "<end>" when absent
  std::string observed;
};

ConformanceResult check_vector(const ConformanceVector& vector, const Scenario& scenario);
// Loads the vector's scenario, applies overrides, simulates and compares.
ConformanceResult run_vector(const ConformanceVector& vector, const ScenarioOverrides& overrides = {});

}  // namespace d2d::eval
