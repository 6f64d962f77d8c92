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

#include <array>
#include <optional>
#include <string_view>

namespace d2d::ue {

enum class Phase : std::uint8_t {
  Off,
  Attaching,
  Attached,
  DiscoveryPending,
  Discovering,
  CommPending,
  D2DActive,
  EpcActive,
};

enum class Input : std::uint8_t {
  PowerOn,
  AttachAccept,
  AttachReject,
  PdnConnectResp,
  StartDiscovery,
  DiscoveryAccept,
  DiscoveryReject,
  StopDiscovery,
  TempIdExpired,
  InitiateSession,
  RbSetup,
  CommAcceptD2D,
  CommAcceptEpc,
  CommReject,
  HandoverCmd,
  SendFlow,
};

inline constexpr std::size_t kPhaseCount = 8;
inline constexpr std::size_t kInputCount = 16;

std::string_view to_string(Phase p) noexcept;
std::string_view to_string(Input i) noexcept;

// Outcome of feeding one input to the phase machine: either the next phase
// or an error cause ("invalid-state", or "no-session" for SendFlow outside
// an active session).
struct Step {
  Phase next = Phase::Off;
  std::string_view error;

  bool ok() const noexcept { return error.empty(); }
};

// Total over Phase x Input.
Step transition(Phase from, Input input) noexcept;

// Phases in which the UE holds a temp-ID.
bool holds_temp_id(Phase p) noexcept;

}  // namespace d2d::ue
