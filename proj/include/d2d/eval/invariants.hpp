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

#include <span>
#include <string>
#include <vector>

#include "d2d/core/trace.hpp"
#include "d2d/sim/network.hpp"

namespace d2d::eval {

struct Violation {
  std::string invariant;  // e.g. "slot-exclusivity"
  SimTime t{0};
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Invariant names, in the order they are checked.
inline constexpr std::string_view kInvariants[] = {
    "time-order",        "causality",        "temp-liveness",   "slot-exclusivity",
    "rb-exclusivity",    "l2-mme-bijection", "authz-precedes-accept",
    "epc-offload",       "ip-constancy",     "exactly-once",    "attach-idempotence",
};

struct CheckOptions {
  // Packets and bearers younger than this at the end of the trace may still
  // be in flight and are not reported as missing.
  SimTime grace{std::chrono::seconds(1)};
};

// Scans a trace and reports every violated safety property. The scan reads
// only the trace records and the link delays.
std::vector<Violation> check_invariants(std::span<const TraceRecord> trace,
                                        const sim::LinkProfile& links, CheckOptions options = {});

std::string format_violation(const Violation& v);

}  // namespace d2d::eval
