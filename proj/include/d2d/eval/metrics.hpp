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

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "d2d/core/trace.hpp"

namespace d2d::eval {

struct ControlCounts {
  std::uint64_t sent = 0;
  std::uint64_t recv = 0;

  friend bool operator==(const ControlCounts&, const ControlCounts&) = default;
};

// One completed pairing: first D2DCommReq sent by either UE to the last
// D2DCommAccept received by either UE.
struct FlowSetup {
  std::string pair;
  EntityId ue_a;
  EntityId ue_b;
  std::string path;  // "d2d" or "epc"
  SimTime delay{0};

  friend bool operator==(const FlowSetup&, const FlowSetup&) = default;
};

struct FlowStats {
  std::uint64_t packets = 0;    // distinct packets sent by the originating UE
  std::uint64_t delivered = 0;  // receptions at a UE other than the origin
  std::uint64_t min_hops = 0;   // DataPacket sends per packet, over all hops
  std::uint64_t max_hops = 0;

  friend bool operator==(const FlowStats&, const FlowStats&) = default;
};

struct MetricsReport {
  std::map<EntityId, ControlCounts> control;  // per entity, control kinds only
  std::vector<FlowSetup> setups;
  std::map<std::string, FlowStats> flows;
  std::uint64_t epc_data_messages = 0;  // DataPacket records at MME, HSS or PGW
  std::map<std::string, SimTime> handover_interruptions;  // by handover id
  std::uint64_t mme_authz_exchanges = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Everything is recomputed from the trace alone.
MetricsReport collect_metrics(std::span<const TraceRecord> trace);

// Long-form CSV: header "metric,key,value", one row per figure.
void write_metrics_csv(const MetricsReport& report, std::ostream& out);

// Number of authorization exchanges involving the MME: attach accepts that
// carry an authorization, separate pushes, and eNB authorization checks.
std::uint64_t count_mme_authz_exchanges(std::span<const TraceRecord> trace);

}  // namespace d2d::eval
