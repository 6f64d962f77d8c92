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

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "d2d/core/profiles.hpp"
#include "d2d/sim/network.hpp"

namespace d2d::epc {

using namespace std::chrono_literals;

// How the authorization obtained at attach reaches the serving eNB: inside
// the attach accept it relays, or as a separate AuthzPush.
enum class AuthzPush { Piggyback, Separate };

struct MmeConfig {
  SimTime authz_validity{3600s};  // 0 disables caching at the eNB
  AuthzPush push = AuthzPush::Piggyback;
};

struct UeContext {
  EntityId ue;
  Imsi imsi;
  D2DId d2d_id;  // empty when attached without the D2D indication
  std::set<D2DAppId> services;
  EntityId serving_enb;
  std::optional<BearerContext> default_bearer;
  std::vector<BearerId> d2d_bearers;
};

enum class BearerState { Active, Released, HandedOver };

struct D2DBearerRecord {
  BearerId id;
  EntityId ue;
  EntityId peer;
  EntityId enb;
  int qos = 9;
  BearerState state = BearerState::Active;
};

class Mme : public sim::Agent {
 public:
  Mme(sim::Network& net, MmeConfig config, EntityId id = EntityId{"mme"});

  const EntityId& id() const noexcept override { return id_; }
  const MmeConfig& config() const noexcept { return config_; }

  bool attached(const EntityId& ue) const { return contexts_.contains(ue); }
  const UeContext* context(const EntityId& ue) const;
  const UeContext* context(const D2DId& d2d_id) const;
  std::size_t context_count() const noexcept { return contexts_.size(); }

  // Records an active D2D bearer for `ue` linked to `peer`; the pair's IP is
  // the owner's default-bearer IP. Both UEs must be attached with D2D
  // authorization at `enb`. Throws SimError("not-attached"),
  // SimError("not-authorized") or SimError("not-supported") (UEs served by
  // different eNBs).
  BearerId create_d2d_bearer(const EntityId& ue, const EntityId& peer, const EntityId& enb,
                             int qos);

  // Moves an active bearer back to the EPC path. Throws
  // SimError("unknown-bearer") or SimError("invalid-state").
  void handover_to_epc(const BearerId& id);

  const D2DBearerRecord* bearer(const BearerId& id) const;
  std::size_t active_bearers() const;

  void on_message(const Message& msg) override;

 private:
  struct PendingAttach {
    EntityId ue;
    Imsi imsi;
    bool d2d = false;
    CorrId attach_corr;
  };

  void on_attach(const Message& msg);
  void on_location(const Message& msg);
  void on_pdn(const Message& msg);
  void on_auth_check(const Message& msg);
  void on_bearer_setup(const Message& msg);
  void on_release(const Message& msg);
  void reject_attach(const EntityId& ue, const CorrId& corr, std::string cause);
  bool d2d_authorized(const EntityId& ue, const EntityId& enb) const;
  CorrId next_corr() { return CorrId{corr_.next()}; }

  EntityId id_;
  sim::Network& net_;
  MmeConfig config_;
  IdCounter corr_;
  IdCounter bearer_ids_{"b"};
  std::map<EntityId, UeContext> contexts_;
  std::map<D2DId, EntityId> by_d2d_;
  std::map<CorrId, PendingAttach> pending_location_;
  std::map<CorrId, PendingAttach> pending_pdn_;
  std::map<BearerId, D2DBearerRecord> bearers_;
};

}  // namespace d2d::epc
