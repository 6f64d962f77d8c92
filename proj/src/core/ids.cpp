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

#include "d2d/core/ids.hpp"

#include <algorithm>

namespace d2d {

std::optional<Imsi> Imsi::parse(std::string_view digits) {
  if (digits.size() != 15) return std::nullopt;
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return Imsi{std::string(digits)};
}

EntityClass classify(const EntityId& id) noexcept {
  const std::string_view s = id.str();
  if (s == "*") return EntityClass::Broadcast;
  if (s == "mme") return EntityClass::Mme;
  if (s == "hss") return EntityClass::Hss;
  if (s == "pgw") return EntityClass::Pgw;
  if (s == "prose") return EntityClass::Prose;
  if (s.size() > 3 && s.starts_with("enb")) return EntityClass::Enb;
  if (s.size() > 2 && s.starts_with("ue")) return EntityClass::Ue;
  return EntityClass::Unknown;
}

std::string_view to_string(EntityClass c) noexcept {
  switch (c) {
    case EntityClass::Ue: return "ue";
    case EntityClass::Enb: return "enb";
    case EntityClass::Mme: return "mme";
    case EntityClass::Hss: return "hss";
    case EntityClass::Pgw: return "pgw";
    case EntityClass::Prose: return "prose";
    case EntityClass::Broadcast: return "*";
    case EntityClass::Unknown: break;
  }
  return "unknown";
}

}  // namespace d2d

#include "d2d/core/faults.hpp"

namespace d2d {

bool FaultSet::any() const noexcept {
  return ignore_temp_expiry || double_grant_slot || reuse_radio_bearer || skip_l2_install ||
         skip_authz_check || route_d2d_via_pgw || new_ip_for_d2d;
}

bool FaultSet::enable(std::string_view name) {
  if (name == "ignore_temp_expiry") ignore_temp_expiry = true;
  else if (name == "double_grant_slot") double_grant_slot = true;
  else if (name == "reuse_radio_bearer") reuse_radio_bearer = true;
  else if (name == "skip_l2_install") skip_l2_install = true;
  else if (name == "skip_authz_check") skip_authz_check = true;
  else if (name == "route_d2d_via_pgw") route_d2d_via_pgw = true;
  else if (name == "new_ip_for_d2d") new_ip_for_d2d = true;
  else return false;
  return true;
}

}  // namespace d2d
