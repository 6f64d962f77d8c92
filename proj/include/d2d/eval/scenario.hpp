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

#include "d2d/core/faults.hpp"
#include "d2d/core/profiles.hpp"
#include "d2d/enb/enb.hpp"
#include "d2d/epc/mme.hpp"
#include "d2d/sim/geometry.hpp"
#include "d2d/sim/network.hpp"
#include "d2d/ue/ue.hpp"

namespace d2d::eval {

using namespace std::chrono_literals;

inline constexpr int kScenarioVersion = 1;

struct CellDef {
  EntityId id;
  sim::Position position;
  double d2d_radius_m = 200.0;
  enb::EnbConfig config;
};

struct UeDef {
  EntityId id;
  Imsi imsi;
  EntityId cell;
  sim::Position position;
  std::vector<sim::Waypoint> waypoints;
  bool d2d = true;
  int qos = 9;
};

enum class ActionKind { PowerOn, StartDiscovery, StopDiscovery, InitiateSession, SendFlow };

struct ActionDef {
  SimTime at{0};
  EntityId ue;
  ActionKind kind = ActionKind::PowerOn;
  ue::DiscoverySpec discovery;  // StartDiscovery
  EntityId peer;                // InitiateSession, SendFlow
  std::uint64_t packets = 0;    // SendFlow
  SimTime interval{0};
  std::size_t size = 0;
};

struct Timers {
  SimTime authz_validity{3600s};
  SimTime temp_id_ttl{300s};
  SimTime pairing_window{500ms};
  SimTime mobility_epoch{100ms};
  SimTime retry_backoff{1s};
  int max_retries = 3;
};

enum class DiscoveryVia { Enb, ProseServer };

struct Options {
  epc::AuthzPush authz_push = epc::AuthzPush::Piggyback;
  DiscoveryVia discovery = DiscoveryVia::Enb;
  SimTime action_jitter{0};  // uniform extra delay per scripted action
};

struct Scenario {
  std::uint64_t seed = 1;
  SimTime duration{0};
  std::vector<SubscriberProfile> subscribers;
  std::vector<CellDef> cells;
  std::vector<UeDef> ues;
  std::vector<ActionDef> actions;
  Timers timers;
  sim::LinkProfile links;
  Options options;
  FaultSet faults;
};

// Parses and validates a version-1 scenario document (JSON), filling
// defaults. Throws SimError with causes such as "invalid-document",
// "invalid-field" (detail names the field), "duplicate-imsi",
// "duplicate-id", "unknown-ue", "unknown-cell", "invalid-duration",
// "invalid-id" and "unknown-fault".
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(std::istream& in);
Scenario load_scenario_file(const std::filesystem::path& path);

}  // namespace d2d::eval
