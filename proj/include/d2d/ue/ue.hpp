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
#include <string>

#include "d2d/core/faults.hpp"
#include "d2d/sim/network.hpp"
#include "d2d/ue/phase.hpp"

namespace d2d::ue {

using namespace std::chrono_literals;

enum class DiscoveryModel { A, B };
enum class DiscoveryRole { Announcing, Monitoring, Discoverer, Discoveree };

using Attributes = std::map<std::string, std::string>;

struct DiscoverySpec {
  D2DAppId app;
  DiscoveryModel model = DiscoveryModel::A;
  DiscoveryRole role = DiscoveryRole::Announcing;
  Attributes attrs;   // advertised with announcements and responses
  Attributes filter;  // every pair must be present in the peer's attributes

  // Announcing/Monitoring belong to model A, Discoverer/Discoveree to B.
  bool consistent() const noexcept;
};

std::optional<DiscoveryModel> parse_model(std::string_view s) noexcept;
std::optional<DiscoveryRole> parse_role(std::string_view s) noexcept;

struct UeConfig {
  Imsi imsi;
  D2DId d2d_id;  // stored on the device; empty for non-D2D subscribers
  bool d2d = true;
  int qos = 9;
  SimTime retry_backoff{1s};
  int max_retries = 3;
  // Discovery requests go to this entity; empty means the serving eNB.
  EntityId discovery_server;
};

struct Match {
  std::string temp;
  EntityId peer;
  D2DAppId app;
  SimTime expires{0};
};

struct Session {
  EntityId peer;
  IpAddress peer_ip;
  RadioBearerId rb;
  PathMode mode = PathMode::D2D;
};

class Ue : public sim::Agent {
 public:
  Ue(sim::Network& net, EntityId id, UeConfig config, FaultSet faults = {});

  const EntityId& id() const noexcept override { return id_; }

  // Scripted actions. Each returns an empty string on success or the error
  // cause, which is also recorded in the trace as an action-error.
  std::string power_on();
  std::string start_discovery(DiscoverySpec spec);
  std::string stop_discovery();
  std::string initiate_session(const EntityId& peer);
  std::string send_flow(const EntityId& peer, std::uint64_t packets, SimTime interval,
                        std::size_t size);

  void on_message(const Message& msg) override;
  void on_timer(const sim::TimerHandle& timer) override;
  bool listens_air() const override { return phase_ == Phase::Discovering; }

  Phase phase() const noexcept { return phase_; }
  const std::optional<IpAddress>& ip() const noexcept { return ip_; }
  const std::optional<TempD2DId>& temp_id() const noexcept { return temp_; }
  const std::map<std::string, Match>& matches() const noexcept { return matches_; }
  const std::optional<Session>& session() const noexcept { return session_; }
  std::uint64_t packets_received() const noexcept { return received_; }

 private:
  std::string fail(std::string_view action, std::string_view cause);
  bool apply(Input input);
  void send_discovery_request();
  void start_emissions();
  SimTime next_slot(SimTime now) const;
  void emit(std::uint64_t generation);
  void on_air(const Message& msg);
  bool live(const TempD2DId& t) const;
  void add_match(const Message& msg);
  void emit_packet(std::string flow, std::uint64_t seq, std::uint64_t count, SimTime interval,
                   std::size_t size);
  const EntityId& serving() const { return net_.serving_cell(id_); }
  CorrId next_corr() { return CorrId{corr_.next()}; }

  EntityId id_;
  sim::Network& net_;
  UeConfig config_;
  FaultSet faults_;
  IdCounter corr_;
  IdCounter flows_;

  Phase phase_ = Phase::Off;
  std::optional<IpAddress> ip_;
  RadioBearerId default_rb_;
  std::optional<TempD2DId> temp_;
  std::optional<DiscoveryResourceConfig> grant_;
  std::optional<DiscoverySpec> spec_;
  std::map<std::string, Match> matches_;
  std::optional<EntityId> pending_peer_;
  std::optional<Session> session_;
  sim::TimerHandle temp_timer_;
  sim::TimerHandle retry_timer_;
  int retries_ = 0;
  std::uint64_t emission_gen_ = 0;
  std::uint64_t received_ = 0;
};

}  // namespace d2d::ue
