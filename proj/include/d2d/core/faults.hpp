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
#include <string_view>

namespace d2d {

// Deliberate protocol faults, used to show that the trace invariant checker
// catches each class of violation. All off in normal runs.
struct FaultSet {
  bool ignore_temp_expiry = false;   // UEs keep announcing and matching expired temp-IDs
  bool double_grant_slot = false;    // eNB grants an occupied discovery slot
  bool reuse_radio_bearer = false;   // eNB hands out the same radio bearer twice
  bool skip_l2_install = false;      // eNB accepts a D2D pair without an L2 route
  bool skip_authz_check = false;     // eNB grants discovery without a valid authorization
  bool route_d2d_via_pgw = false;    // eNB hairpins D2D traffic through the PGW
  bool new_ip_for_d2d = false;       // UE binds a fresh IP to its D2D bearer

  bool any() const noexcept;
  // Sets the named fault; returns false for an unknown name.
  bool enable(std::string_view name);
};

}  // namespace d2d
