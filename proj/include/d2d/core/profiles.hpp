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

#include <optional>
#include <set>

#include "d2d/core/ids.hpp"
#include "d2d/core/time.hpp"

namespace d2d {

// HSS record binding an IMSI to its permanent D2D identity and the D2D
// services the subscriber may use.
struct SubscriberProfile {
  Imsi imsi;
  D2DId d2d_id;
  std::set<D2DAppId> authorized_services;
};

// Cached D2D authorization, stored per D2D id at the serving eNB.
struct AuthorizationEntry {
  D2DId d2d_id;
  std::set<D2DAppId> services;
  SimTime stored_at{0};
  SimTime validity{0};

  SimTime expires_at() const noexcept { return stored_at + validity; }
  bool usable_at(SimTime now) const noexcept { return now < expires_at(); }
  bool authorizes(const D2DAppId& app) const { return services.contains(app); }
};

enum class BearerKind { DefaultEps, D2DDedicated };

struct BearerContext {
  BearerKind kind = BearerKind::DefaultEps;
  EntityId owner;
  IpAddress ip;
  int qos_class = 9;
  std::optional<BearerId> d2d_bearer_id;
  std::optional<EntityId> peer;
  RadioBearerId radio_bearer;
};

enum class LinkDirection { Uplink, Downlink };

struct DiscoveryResourceConfig {
  int slot_index = 0;
  int pool_size = 16;
  SimTime period{320'000};
  LinkDirection direction = LinkDirection::Uplink;
  int tx_power_dbm = 23;

  // Offset of this slot inside each period.
  SimTime slot_offset() const noexcept { return period / pool_size * slot_index; }

  friend bool operator==(const DiscoveryResourceConfig&, const DiscoveryResourceConfig&) = default;
};

// Data path chosen for a D2D pair.
enum class PathMode { D2D, Epc };

// QoS classes 1..9; lower class forwards first at the eNB.
inline bool valid_qos_class(int qos) noexcept { return qos >= 1 && qos <= 9; }

}  // namespace d2d
