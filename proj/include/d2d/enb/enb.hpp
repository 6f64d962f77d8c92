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
#include <string>
#include <vector>

#include "d2d/core/faults.hpp"
#include "d2d/enb/tables.hpp"
#include "d2d/sim/network.hpp"

namespace d2d::enb {

using namespace std::chrono_literals;

struct EnbConfig {
  int capacity = 256;                 // concurrent D2D radio bearers
  int preload = 0;                    // bearers already active at start
  double congestion_threshold = 0.8;
  int pool_slots = 16;
  SimTime pool_period{320ms};
  SimTime temp_id_ttl{300s};
  SimTime pairing_window{500ms};      // <= 0 disables pairing
  double coverage_m = 1000.0;
};

// Base station with the D2D extensions: authorization cache, discovery
// grants, pairing of communication requests, dedicated radio bearers, the
// layer-2 routing table and the proximity watchdog that hands flows back to
// the EPC path.
class Enb : public sim::Agent {
 public:
  // Throws SimError("invalid-config") for non-positive capacity or pool.
  Enb(sim::Network& net, EntityId id, EnbConfig config, FaultSet faults = {});

  const EntityId& id() const noexcept override { return id_; }
  const EnbConfig& config() const noexcept { return config_; }

  void on_message(const Message& msg) override;
  void on_timer(const sim::TimerHandle& timer) override;
  void on_nas_transit(Message& msg) override;
  void on_epoch() override;

  bool attached(const EntityId& ue) const { return ues_.contains(ue); }
  const AuthorizationCache& cache() const noexcept { return cache_; }
  const DiscoveryResourcePool& pool() const noexcept { return pool_; }
  const L2RoutingTable& l2() const noexcept { return l2_; }
  const CellState& cell() const noexcept { return cell_; }

 private:
  struct UeEntry {
    IpAddress ip;
    RadioBearerId default_rb;
  };
  struct TempRecord {
    TempD2DId temp;
    EntityId ue;
    D2DId d2d;
    std::optional<int> slot;
    sim::TimerHandle timer;
  };
  struct PendingCheck {
    EntityId ue;
    CorrId corr;
    D2DId d2d;
    D2DAppId app;
  };
  struct CommRequest {
    EntityId ue;
    CorrId corr;
    std::string own_temp;
    std::string peer_temp;
    int qos = 9;
  };
  struct Waiting {
    std::string pair;
    CommRequest req;
    sim::TimerHandle timer;
  };
  struct Pairing {
    CommRequest a;
    CommRequest b;
    std::optional<BearerId> bearer_a;
    std::optional<BearerId> bearer_b;
    std::optional<std::string> cause;
    int responses = 0;
    RadioBearerId rb_a;
    RadioBearerId rb_b;
    int acks = 0;
  };

  // Discovery
  void on_discovery(const Message& msg);
  void on_auth_check(const Message& msg);
  void store_authz(const D2DId& d2d, const EntityId& ue, const std::set<D2DAppId>& services,
                   SimTime validity);
  void grant(const EntityId& ue, const CorrId& corr, const D2DId& d2d, const D2DAppId& app);
  void reject_discovery(const EntityId& ue, const CorrId& corr, std::string cause);
  void retire_temp(const std::string& value, std::string_view label);
  void free_slot(TempRecord& rec);

  // Communication
  void on_comm(const Message& msg);
  void establish(const std::string& pair, CommRequest a, CommRequest b);
  void on_bearer_resp(const Message& msg);
  void on_rb_ack(const Message& msg);
  void accept(const CommRequest& to, const CommRequest& peer, PathMode mode,
              const RadioBearerId& rb);
  void reject_comm(const EntityId& ue, const CorrId& corr, std::string cause);

  // User plane
  void enqueue(const Message& msg);
  void flush();
  void route(Message msg);

  void handover(const L2RouteEntry& entry);

  CorrId next_corr() { return CorrId{corr_.next()}; }
  RadioBearerId next_rb();

  EntityId id_;
  sim::Network& net_;
  EnbConfig config_;
  FaultSet faults_;
  IdCounter corr_;
  IdCounter temps_;
  IdCounter rbs_;
  IdCounter pairs_;
  IdCounter handovers_;
  RadioBearerId last_rb_;

  AuthorizationCache cache_;
  DiscoveryResourcePool pool_;
  L2RoutingTable l2_;
  CellState cell_;

  std::map<EntityId, UeEntry> ues_;
  std::map<IpAddress, EntityId> ip_owner_;
  std::map<D2DId, EntityId> authz_owner_;
  std::map<std::string, TempRecord> temps_by_value_;
  std::map<EntityId, std::string> temp_of_ue_;
  std::map<CorrId, PendingCheck> checks_;
  std::map<EntityId, Waiting> waiting_;
  std::map<std::string, Pairing> pairings_;
  std::map<CorrId, std::pair<std::string, bool>> bearer_corr_;  // -> (pair, is side a)
  std::map<CorrId, std::string> rb_corr_;
  std::set<RadioBearerId> handed_over_;
  std::vector<Message> forward_queue_;
};

}  // namespace d2d::enb
