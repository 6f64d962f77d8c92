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

#include <string>
#include <vector>

#include "d2d/core/message.hpp"
#include "d2d/core/trace.hpp"
#include "d2d/eval/scenario.hpp"

namespace d2d::testing {

inline std::string scenario_path(const std::string& name) {
  return std::string(D2D_SCENARIO_DIR) + "/" + name + ".json";
}

inline eval::Scenario load(const std::string& name) {
  return eval::load_scenario_file(scenario_path(name));
}

// Send records of one kind, optionally restricted to a sender class.
inline std::vector<WireView> sends(const Trace& trace, MessageKind kind) {
  std::vector<WireView> out;
  for (const auto& r : trace) {
    if (r.event != TraceEvent::Send) continue;
    auto w = parse_wire(r.detail);
    if (w && w->kind == kind) out.push_back(*w);
  }
  return out;
}

// State-change records with the given label.
inline std::vector<std::pair<TraceRecord, Labels>> states(const Trace& trace,
                                                          std::string_view label) {
  std::vector<std::pair<TraceRecord, Labels>> out;
  for (const auto& r : trace) {
    if (r.event != TraceEvent::StateChange) continue;
    Labels l = parse_labels(r.detail);
    if (l.label == label) out.emplace_back(r, std::move(l));
  }
  return out;
}

}  // namespace d2d::testing
