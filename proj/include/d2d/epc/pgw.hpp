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

#include <functional>
#include <map>

#include "d2d/core/profiles.hpp"
#include "d2d/sim/network.hpp"

namespace d2d::epc {

// PDN gateway stub (serving gateway merged in): allocates one IP per UE and
// carries EPC-path user data between eNBs.
class Pgw : public sim::Agent {
 public:
  using AttachedFn = std::function<bool(const EntityId&)>;

  Pgw(sim::Network& net, AttachedFn is_attached, EntityId id = EntityId{"pgw"});

  const EntityId& id() const noexcept override { return id_; }

  // Allocates "ip-N" and records the default bearer. Throws
  // SimError("not-attached") or SimError("duplicate-pdn").
  IpAddress establish_pdn(const EntityId& ue);

  const BearerContext* default_bearer(const EntityId& ue) const;
  std::size_t pdn_count() const noexcept { return bearers_.size(); }

  void on_message(const Message& msg) override;

 private:
  void forward(const Message& msg);

  EntityId id_;
  sim::Network& net_;
  AttachedFn is_attached_;
  IdCounter ips_{"ip-"};
  std::map<EntityId, BearerContext> bearers_;
  std::map<IpAddress, EntityId> owners_;
};

}  // namespace d2d::epc
