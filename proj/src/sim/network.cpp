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

#include "d2d/sim/network.hpp"

#include <algorithm>

#include "d2d/core/error.hpp"

namespace d2d::sim {

namespace {
constexpr double kDefaultRadius = 200.0;

bool pair_is(EntityClass a, EntityClass b, EntityClass x, EntityClass y) {
  return (a == x && b == y) || (a == y && b == x);
}
}  // namespace

SimTime LinkProfile::delay(EntityClass a, EntityClass b) const {
  using C = EntityClass;
  if (pair_is(a, b, C::Ue, C::Enb)) return ue_enb;
  if (pair_is(a, b, C::Enb, C::Mme)) return enb_mme;
  if (pair_is(a, b, C::Ue, C::Mme)) return ue_enb + enb_mme;
  if (pair_is(a, b, C::Mme, C::Hss)) return mme_hss;
  if (pair_is(a, b, C::Mme, C::Pgw)) return mme_pgw;
  if (pair_is(a, b, C::Ue, C::Ue) || pair_is(a, b, C::Ue, C::Broadcast)) return ue_ue;
  if (pair_is(a, b, C::Enb, C::Pgw)) return enb_pgw;
  if (pair_is(a, b, C::Ue, C::Prose)) return ue_prose;
  if (pair_is(a, b, C::Prose, C::Hss)) return prose_hss;
  throw SimError("no-link", std::string(to_string(a)) + "-" + std::string(to_string(b)));
}

bool LinkProfile::valid() const noexcept {
  for (SimTime d : {ue_enb, enb_mme, mme_hss, mme_pgw, ue_ue, enb_pgw, ue_prose, prose_hss}) {
    if (d.count() <= 0) return false;
  }
  return jitter.count() >= 0;
}

Network::Network(Engine& engine, LinkProfile links) : engine_(engine), links_(links) {
  if (!links_.valid()) throw SimError("invalid-links", "all delays must be > 0");
  engine_.set_handlers(Engine::Handlers{
      [this](Deliver& d) { deliver(d); },
      [this](const TimerHandle& h) {
        if (Agent* a = find(h.owner)) a->on_timer(h);
      },
      [this] { mobility_step(); },
  });
}

void Network::add(Agent& agent) {
  const auto [it, inserted] = agents_.emplace(agent.id(), &agent);
  if (!inserted) throw SimError("duplicate-entity", agent.id().str());
  all_.push_back(&agent);
  if (classify(agent.id()) == EntityClass::Ue) ues_.push_back(&agent);
}

Agent* Network::find(const EntityId& id) const {
  auto it = agents_.find(id);
  return it == agents_.end() ? nullptr : it->second;
}

void Network::set_position(const EntityId& id, Position pos) { positions_[id] = pos; }

const Position& Network::position(const EntityId& id) const {
  static const Position origin{};
  auto it = positions_.find(id);
  return it == positions_.end() ? origin : it->second;
}

void Network::set_path(const EntityId& id, std::vector<Waypoint> path) {
  if (path.empty()) return;
  std::stable_sort(path.begin(), path.end(),
                   [](const Waypoint& a, const Waypoint& b) { return a.at < b.at; });
  positions_[id] = position_at(path, engine_.now());
  paths_.emplace_back(id, std::move(path));
}

void Network::set_serving_cell(const EntityId& ue, const EntityId& enb) { serving_[ue] = enb; }

const EntityId& Network::serving_cell(const EntityId& ue) const {
  auto it = serving_.find(ue);
  if (it == serving_.end()) throw SimError("no-serving-cell", ue.str());
  return it->second;
}

void Network::set_d2d_radius(const EntityId& enb, double radius) {
  if (!(radius > 0.0)) throw SimError("invalid-radius", enb.str());
  radius_[enb] = radius;
}

double Network::d2d_radius(const EntityId& enb) const {
  auto it = radius_.find(enb);
  return it == radius_.end() ? kDefaultRadius : it->second;
}

void Network::start_mobility(SimTime epoch) {
  if (epoch.count() <= 0) throw SimError("invalid-duration", "mobility epoch");
  epoch_ = epoch;
  engine_.schedule(MobilityStep{}, engine_.now() + epoch_);
}

void Network::mobility_step() {
  const SimTime now = engine_.now();
  for (const auto& [id, path] : paths_) positions_[id] = position_at(path, now);
  for (Agent* a : all_) a->on_epoch();
  engine_.schedule(MobilityStep{}, now + epoch_);
}

SimTime Network::arrival(const Message& msg, SimTime base) {
  SimTime at = engine_.now() + base;
  if (links_.jitter.count() > 0) {
    at += SimTime{static_cast<long long>(engine_.uniform(static_cast<std::uint64_t>(links_.jitter.count())))};
    // Per-link FIFO: jitter never reorders messages on one directed link.
    SimTime& last = last_arrival_[{msg.src, msg.dst}];
    at = std::max(at, last);
    last = at;
  }
  return at;
}

void Network::send(Message msg) {
  if (auto bad = validate_message(msg)) {
    throw SimError("invalid-message", std::string(to_string(msg.kind)) + " field " + *bad);
  }
  engine_.record(TraceEvent::Send, msg.src, format_wire(msg));

  const EntityClass sc = classify(msg.src);
  const EntityClass dc = classify(msg.dst);

  if (is_air(msg.kind)) {
    const double radius = d2d_radius(serving_cell(msg.src));
    const Position& from = position(msg.src);
    const SimTime at = engine_.now() + links_.ue_ue;
    if (msg.dst == kBroadcast) {
      for (Agent* rx : ues_) {
        if (rx->id() == msg.src || !rx->listens_air()) continue;
        if (!in_d2d_range(from, position(rx->id()), radius)) continue;
        engine_.schedule(Deliver{msg, rx->id()}, at);
      }
    } else if (in_d2d_range(from, position(msg.dst), radius)) {
      EntityId to = msg.dst;
      engine_.schedule(Deliver{std::move(msg), std::move(to)}, at);
    }
    return;
  }

  const SimTime at = arrival(msg, links_.delay(sc, dc));
  const bool nas = (sc == EntityClass::Ue && dc == EntityClass::Mme) ||
                   (sc == EntityClass::Mme && dc == EntityClass::Ue);
  if (nas) {
    const EntityId& ue = sc == EntityClass::Ue ? msg.src : msg.dst;
    const EntityId enb = serving_cell(ue);
    const SimTime first = sc == EntityClass::Ue ? links_.ue_enb : links_.enb_mme;
    engine_.schedule(ScenarioAction{[this, enb, at, m = std::move(msg)]() mutable {
                       if (Agent* relay = find(enb)) relay->on_nas_transit(m);
                       EntityId to = m.dst;
                       engine_.schedule(Deliver{std::move(m), std::move(to)}, at);
                     }},
                     std::min(engine_.now() + first, at));
    return;
  }
  EntityId to = msg.dst;
  engine_.schedule(Deliver{std::move(msg), std::move(to)}, at);
}

void Network::deliver(Deliver& d) {
  engine_.record(TraceEvent::Recv, d.to, format_wire(d.msg));
  if (Agent* a = find(d.to)) {
    a->on_message(d.msg);
  } else {
    drop(d.to, "no-entity", d.msg);
  }
}

void Network::drop(const EntityId& at, std::string_view reason, const Message& msg) {
  engine_.record(TraceEvent::Drop, at, std::string(reason) + " " + format_wire(msg));
}

void Network::state(const EntityId& at, std::string detail) {
  engine_.record(TraceEvent::StateChange, at, std::move(detail));
}

}  // namespace d2d::sim
