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

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "d2d/sim/engine.hpp"
#include "d2d/sim/geometry.hpp"

namespace d2d::sim {

using namespace std::chrono_literals;

// One-way delay per link class.
struct LinkProfile {
  SimTime ue_enb{5ms};
  SimTime enb_mme{10ms};
  SimTime mme_hss{15ms};
  SimTime mme_pgw{10ms};
  SimTime ue_ue{2ms};  // air interface
  SimTime enb_pgw{10ms};
  SimTime ue_prose{25ms};
  SimTime prose_hss{15ms};
  // Upper bound of a uniform extra delay drawn per wired send; 0 disables.
  SimTime jitter{0};

  // UE<->MME (NAS) is the sum of the two legs through the eNB. Throws
  // SimError("no-link") for entity classes that are never connected.
  SimTime delay(EntityClass a, EntityClass b) const;
  bool valid() const noexcept;
};

class Agent {
 public:
  virtual ~Agent() = default;

  virtual const EntityId& id() const noexcept = 0;
  virtual void on_message(const Message& msg) = 0;
  virtual void on_timer(const TimerHandle&) {}
  // NAS messages between a UE and the MME transit the UE's serving eNB, which
  // may read and annotate them without a separate send.
  virtual void on_nas_transit(Message&) {}
  virtual bool listens_air() const { return false; }
  // Called once per mobility epoch, after positions are updated.
  virtual void on_epoch() {}
};

// Message transport and world state (positions, serving cells) shared by all
// agents of one simulation.
class Network {
 public:
  Network(Engine& engine, LinkProfile links);

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  void add(Agent& agent);
  Agent* find(const EntityId& id) const;

  void set_position(const EntityId& id, Position pos);
  const Position& position(const EntityId& id) const;
  void set_path(const EntityId& id, std::vector<Waypoint> path);

  void set_serving_cell(const EntityId& ue, const EntityId& enb);
  const EntityId& serving_cell(const EntityId& ue) const;
  void set_d2d_radius(const EntityId& enb, double radius);
  double d2d_radius(const EntityId& enb) const;

  // Starts periodic mobility steps; each step moves scripted entities, then
  // calls on_epoch on every agent.
  void start_mobility(SimTime epoch);

  // Validates, records the send and schedules delivery. Broadcast air
  // messages (dst "*") reach every listening UE within the sender cell's D2D
  // radius at send time; unicast air messages are lost when out of range.
  // Throws SimError("invalid-message") for malformed messages.
  void send(Message msg);

  void drop(const EntityId& at, std::string_view reason, const Message& msg);
  void state(const EntityId& at, std::string detail);

  Engine& engine() noexcept { return engine_; }
  SimTime now() const noexcept { return engine_.now(); }
  const LinkProfile& links() const noexcept { return links_; }

 private:
  void deliver(Deliver& d);
  SimTime arrival(const Message& msg, SimTime base);
  void mobility_step();

  Engine& engine_;
  LinkProfile links_;
  std::unordered_map<EntityId, Agent*> agents_;
  std::vector<Agent*> ues_;
  std::vector<Agent*> all_;
  std::unordered_map<EntityId, Position> positions_;
  std::vector<std::pair<EntityId, std::vector<Waypoint>>> paths_;
  std::unordered_map<EntityId, EntityId> serving_;
  std::unordered_map<EntityId, double> radius_;
  std::map<std::pair<EntityId, EntityId>, SimTime> last_arrival_;
  SimTime epoch_{0};
};

}  // namespace d2d::sim
