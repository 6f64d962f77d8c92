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

#include "d2d/ue/phase.hpp"

namespace d2d::ue {

std::string_view to_string(Phase p) noexcept {
  static constexpr std::array<std::string_view, kPhaseCount> names = {
      "off", "attaching", "attached", "discovery_pending",
      "discovering", "comm_pending", "d2d_active", "epc_active"};
  return names[static_cast<std::size_t>(p)];
}

std::string_view to_string(Input i) noexcept {
  static constexpr std::array<std::string_view, kInputCount> names = {
      "power_on",         "attach_accept",    "attach_reject",   "pdn_connect_resp",
      "start_discovery",  "discovery_accept", "discovery_reject", "stop_discovery",
      "temp_id_expired",  "initiate_session", "rb_setup",        "comm_accept_d2d",
      "comm_accept_epc",  "comm_reject",      "handover_cmd",    "send_flow"};
  return names[static_cast<std::size_t>(i)];
}

Step transition(Phase from, Input input) noexcept {
  using P = Phase;
  using I = Input;
  auto go = [](P p) { return Step{p, {}}; };

  switch (from) {
    case P::Off:
      if (input == I::PowerOn) return go(P::Attaching);
      break;
    case P::Attaching:
      if (input == I::AttachAccept) return go(P::Attaching);
      if (input == I::AttachReject) return go(P::Off);
      if (input == I::PdnConnectResp) return go(P::Attached);
      break;
    case P::Attached:
      if (input == I::StartDiscovery) return go(P::DiscoveryPending);
      break;
    case P::DiscoveryPending:
      if (input == I::DiscoveryAccept) return go(P::Discovering);
      if (input == I::DiscoveryReject || input == I::StopDiscovery) return go(P::Attached);
      break;
    case P::Discovering:
      if (input == I::StartDiscovery) return go(P::DiscoveryPending);
      if (input == I::StopDiscovery || input == I::TempIdExpired) return go(P::Attached);
      if (input == I::InitiateSession) return go(P::CommPending);
      break;
    case P::CommPending:
      if (input == I::RbSetup || input == I::TempIdExpired) return go(P::CommPending);
      if (input == I::CommAcceptD2D) return go(P::D2DActive);
      if (input == I::CommAcceptEpc) return go(P::EpcActive);
      if (input == I::CommReject) return go(P::Discovering);
      break;
    case P::D2DActive:
      if (input == I::SendFlow || input == I::TempIdExpired) return go(P::D2DActive);
      if (input == I::HandoverCmd) return go(P::EpcActive);
      break;
    case P::EpcActive:
      if (input == I::SendFlow || input == I::TempIdExpired) return go(P::EpcActive);
      break;
  }
  if (input == I::SendFlow) return Step{from, "no-session"};
  return Step{from, "invalid-state"};
}

bool holds_temp_id(Phase p) noexcept {
  return p == Phase::Discovering || p == Phase::CommPending || p == Phase::D2DActive;
}

}  // namespace d2d::ue
