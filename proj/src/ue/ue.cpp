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

#include "d2d/ue/ue.hpp"

#include <fmt/format.h>

#include "d2d/core/error.hpp"

namespace d2d::ue {
namespace {

bool satisfies(const Attributes& filter, const std::optional<std::map<std::string, std::string>>& attrs) {
  for (const auto& [k, v] : filter) {
    if (!attrs) return false;
    auto it = attrs->find(k);
    if (it == attrs->end() || it->second != v) return false;
  }
  return true;
}

}  // namespace

bool DiscoverySpec::consistent() const noexcept {
  if (model == DiscoveryModel::A) {
    return role == DiscoveryRole::Announcing || role == DiscoveryRole::Monitoring;
  }
  return role == DiscoveryRole::Discoverer || role == DiscoveryRole::Discoveree;
}

std::optional<DiscoveryModel> parse_model(std::string_view s) noexcept {
  if (s == "A") return DiscoveryModel::A;
  if (s == "B") return DiscoveryModel::B;
  return std::nullopt;
}

std::optional<DiscoveryRole> parse_role(std::string_view s) noexcept {
  if (s == "announcing") return DiscoveryRole::Announcing;
  if (s == "monitoring") return DiscoveryRole::Monitoring;
  if (s == "discoverer") return DiscoveryRole::Discoverer;
  if (s == "discoveree") return DiscoveryRole::Discoveree;
  return std::nullopt;
}

Ue::Ue(sim::Network& net, EntityId id, UeConfig config, FaultSet faults)
    : id_(std::move(id)),
      net_(net),
      config_(std::move(config)),
      faults_(faults),
      corr_(id_.str() + "."),
      flows_(id_.str() + ".f") {
  if (!valid_qos_class(config_.qos)) throw SimError("invalid-qos", id_.str());
}

std::string Ue::fail(std::string_view action, std::string_view cause) {
  net_.state(id_, fmt::format("action-error do={} cause={}", action, cause));
  return std::string(cause);
}

bool Ue::apply(Input input) {
  const Step step = transition(phase_, input);
  if (!step.ok()) return false;
  if (step.next != phase_) {
    net_.state(id_, fmt::format("phase from={} to={}", to_string(phase_), to_string(step.next)));
    phase_ = step.next;
  }
  if (!holds_temp_id(phase_) && temp_) {
    temp_.reset();
    grant_.reset();
    net_.engine().cancel_timer(temp_timer_);
  }
  return true;
}

// ------------------------------------------------------------------ actions

std::string Ue::power_on() {
  if (!transition(phase_, Input::PowerOn).ok()) return fail("power_on", "invalid-state");
  Message out;
  out.kind = MessageKind::NasAttachReq;
  out.src = id_;
  out.dst = EntityId{"mme"};
  out.corr = next_corr();
  out.payload.imsi = config_.imsi;
  out.payload.d2d_flag = config_.d2d;
  apply(Input::PowerOn);
  net_.send(std::move(out));
  return {};
}

std::string Ue::start_discovery(DiscoverySpec spec) {
  if (!transition(phase_, Input::StartDiscovery).ok()) {
    return fail("start_discovery", "invalid-state");
  }
  if (config_.d2d_id.empty()) return fail("start_discovery", "no-d2d-id");
  if (spec.app.empty() || !spec.consistent()) return fail("start_discovery", "invalid-role");
  spec_ = std::move(spec);
  retries_ = 0;
  ++emission_gen_;
  apply(Input::StartDiscovery);
  send_discovery_request();
  return {};
}

void Ue::send_discovery_request() {
  Message out;
  out.kind = MessageKind::D2DDiscoveryReq;
  out.src = id_;
  out.dst = config_.discovery_server.empty() ? serving() : config_.discovery_server;
  out.corr = next_corr();
  out.payload.d2d_id = config_.d2d_id;
  out.payload.app_id = spec_->app;
  net_.send(std::move(out));
}

std::string Ue::stop_discovery() {
  if (!apply(Input::StopDiscovery)) return fail("stop_discovery", "invalid-state");
  ++emission_gen_;
  net_.engine().cancel_timer(retry_timer_);
  return {};
}

std::string Ue::initiate_session(const EntityId& peer) {
  if (!transition(phase_, Input::InitiateSession).ok()) {
    return fail("initiate_session", "invalid-state");
  }
  const Match* best = nullptr;
  for (const auto& [temp, m] : matches_) {
    if (m.peer != peer) continue;
    if (!faults_.ignore_temp_expiry && net_.now() >= m.expires) continue;
    if (best == nullptr || m.expires > best->expires) best = &m;
  }
  if (best == nullptr) return fail("initiate_session", "unknown-peer");

  Message out;
  out.kind = MessageKind::D2DCommReq;
  out.src = id_;
  out.dst = serving();
  out.corr = next_corr();
  out.payload.d2d_id = config_.d2d_id;
  out.payload.temp_id = *temp_;
  out.payload.peer_temp_id = best->temp;
  out.payload.qos = config_.qos;
  pending_peer_ = peer;
  ++emission_gen_;
  apply(Input::InitiateSession);
  net_.send(std::move(out));
  return {};
}

std::string Ue::send_flow(const EntityId& peer, std::uint64_t packets, SimTime interval,
                          std::size_t size) {
  if (!transition(phase_, Input::SendFlow).ok() || !session_ || session_->peer != peer) {
    return fail("send_flow", "no-session");
  }
  if (packets > 1 && interval.count() <= 0) return fail("send_flow", "invalid-duration");
  if (packets == 0) return {};
  emit_packet(flows_.next(), 1, packets, interval, size);
  return {};
}

void Ue::emit_packet(std::string flow, std::uint64_t seq, std::uint64_t count, SimTime interval,
                     std::size_t size) {
  if (!transition(phase_, Input::SendFlow).ok() || !session_) {
    fail("send_flow", "no-session");
    return;
  }
  auto data = std::make_shared<Bytes>(size);
  for (std::size_t i = 0; i < size; i += 8) {
    std::uint64_t word = net_.engine().rng()();
    for (std::size_t j = i; j < size && j < i + 8; ++j, word >>= 8) {
      (*data)[j] = static_cast<std::uint8_t>(word);
    }
  }
  Message out;
  out.kind = MessageKind::DataPacket;
  out.src = id_;
  out.dst = serving();
  out.corr = CorrId{flow + "#" + std::to_string(seq)};
  out.payload.flow = flow;
  out.payload.seq = seq;
  out.payload.data = std::move(data);
  out.payload.peer_ip = session_->peer_ip;
  out.payload.rb = session_->rb;
  out.payload.qos = config_.qos;
  net_.send(std::move(out));
  if (seq < count) {
    net_.engine().schedule(
        sim::ScenarioAction{[this, flow = std::move(flow), seq, count, interval, size]() mutable {
          emit_packet(std::move(flow), seq + 1, count, interval, size);
        }},
        net_.now() + interval);
  }
}

// ---------------------------------------------------------------- discovery

SimTime Ue::next_slot(SimTime now) const {
  const SimTime period = grant_->period;
  const SimTime offset = grant_->slot_offset();
  if (now <= offset) return offset;
  const auto k = (now - offset + period - SimTime{1}) / period;
  return offset + period * k;
}

void Ue::start_emissions() {
  const auto role = spec_->role;
  if (role != DiscoveryRole::Announcing && role != DiscoveryRole::Discoverer) return;
  const std::uint64_t gen = ++emission_gen_;
  net_.engine().schedule(sim::ScenarioAction{[this, gen] { emit(gen); }}, next_slot(net_.now()));
}

bool Ue::live(const TempD2DId& t) const {
  return faults_.ignore_temp_expiry || t.live_at(net_.now());
}

void Ue::emit(std::uint64_t generation) {
  if (generation != emission_gen_ || phase_ != Phase::Discovering || !temp_ || !live(*temp_)) {
    return;
  }
  Message out;
  out.kind = spec_->model == DiscoveryModel::A ? MessageKind::AirAnnounce : MessageKind::AirQuery;
  out.src = id_;
  out.dst = kBroadcast;
  out.corr = next_corr();
  out.payload.temp_id = *temp_;
  out.payload.app_id = spec_->app;
  const Attributes& attrs = spec_->model == DiscoveryModel::A ? spec_->attrs : spec_->filter;
  if (!attrs.empty()) out.payload.attrs = attrs;
  net_.send(std::move(out));
  net_.engine().schedule(sim::ScenarioAction{[this, generation] { emit(generation); }},
                         net_.now() + grant_->period);
}

void Ue::add_match(const Message& msg) {
  const TempD2DId& t = *msg.payload.temp_id;
  if (!live(t)) return;
  const bool fresh = !matches_.contains(t.value);
  matches_[t.value] = Match{t.value, msg.src, *msg.payload.app_id, t.expires_at()};
  if (fresh) {
    net_.state(id_, fmt::format("match temp={} app={} peer={}", t.value, msg.payload.app_id->str(),
                                msg.src.str()));
  }
}

void Ue::on_air(const Message& msg) {
  if (!spec_ || phase_ != Phase::Discovering || *msg.payload.app_id != spec_->app) return;
  const DiscoveryRole role = spec_->role;
  switch (msg.kind) {
    case MessageKind::AirAnnounce:
      if (spec_->model == DiscoveryModel::A && satisfies(spec_->filter, msg.payload.attrs)) {
        add_match(msg);
      }
      return;
    case MessageKind::AirQuery: {
      if (role != DiscoveryRole::Discoveree || !temp_ || !live(*temp_)) return;
      if (!satisfies(msg.payload.attrs.value_or(Attributes{}), spec_->attrs) ||
          !live(*msg.payload.temp_id)) {
        return;
      }
      add_match(msg);
      // The response goes out on this UE's own slot.
      const std::uint64_t gen = emission_gen_;
      const EntityId querier = msg.src;
      net_.engine().schedule(
          sim::ScenarioAction{[this, gen, querier] {
            if (gen != emission_gen_ || phase_ != Phase::Discovering || !temp_ || !live(*temp_)) {
              return;
            }
            Message out;
            out.kind = MessageKind::AirResponse;
            out.src = id_;
            out.dst = querier;
            out.corr = next_corr();
            out.payload.temp_id = *temp_;
            out.payload.app_id = spec_->app;
            if (!spec_->attrs.empty()) out.payload.attrs = spec_->attrs;
            net_.send(std::move(out));
          }},
          next_slot(net_.now()));
      return;
    }
    case MessageKind::AirResponse:
      if (role == DiscoveryRole::Discoverer && satisfies(spec_->filter, msg.payload.attrs)) {
        add_match(msg);
      }
      return;
    default:
      return;
  }
}

// ----------------------------------------------------------------- messages

void Ue::on_message(const Message& msg) {
  const Payload& p = msg.payload;
  switch (msg.kind) {
    case MessageKind::NasAttachAccept:
      if (!apply(Input::AttachAccept)) net_.drop(id_, "invalid-state", msg);
      return;
    case MessageKind::NasAttachReject:
      if (!apply(Input::AttachReject)) net_.drop(id_, "invalid-state", msg);
      return;
    case MessageKind::PdnConnectResp:
      if (p.cause) {
        if (!apply(Input::AttachReject)) net_.drop(id_, "invalid-state", msg);
        return;
      }
      if (!apply(Input::PdnConnectResp)) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      ip_ = *p.ip;
      default_rb_ = p.rb.value_or(RadioBearerId{});
      net_.state(id_, fmt::format("bearer kind=default ip={} rb={}", ip_->str(), default_rb_.str()));
      return;
    case MessageKind::D2DDiscoveryAccept: {
      if (!apply(Input::DiscoveryAccept)) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      temp_ = *p.temp_id;
      grant_ = *p.config;
      retries_ = 0;
      const SimTime left = temp_->expires_at() - net_.now();
      if (left.count() > 0) temp_timer_ = net_.engine().set_timer(id_, "temp", left);
      start_emissions();
      return;
    }
    case MessageKind::D2DDiscoveryReject:
      if (phase_ != Phase::DiscoveryPending) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      if (*p.cause == "no-resources" && retries_ < config_.max_retries) {
        ++retries_;
        retry_timer_ = net_.engine().set_timer(id_, "retry", config_.retry_backoff);
        return;
      }
      apply(Input::DiscoveryReject);
      return;
    case MessageKind::AirAnnounce:
    case MessageKind::AirQuery:
    case MessageKind::AirResponse:
      on_air(msg);
      return;
    case MessageKind::RbSetup: {
      if (!apply(Input::RbSetup)) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      const IpAddress ip = faults_.new_ip_for_d2d ? IpAddress{id_.str() + "-ip-d2d"} : *ip_;
      net_.state(id_, fmt::format("bearer kind=d2d ip={} rb={} peer={} id={}", ip.str(),
                                  p.rb->str(), pending_peer_ ? pending_peer_->str() : "-",
                                  p.d2d_bearer_id->str()));
      Message ack = reply_to(msg, MessageKind::RbSetupAck);
      ack.payload.rb = p.rb;
      net_.send(std::move(ack));
      return;
    }
    case MessageKind::D2DCommAccept: {
      const bool d2d = *p.mode == PathMode::D2D;
      if (!apply(d2d ? Input::CommAcceptD2D : Input::CommAcceptEpc)) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      session_ = Session{*p.peer, *p.peer_ip, *p.rb, *p.mode};
      pending_peer_.reset();
      net_.state(id_, fmt::format("rule peer={} peer_ip={} rb={}", p.peer->str(), p.peer_ip->str(),
                                  p.rb->str()));
      return;
    }
    case MessageKind::D2DCommReject:
      if (!apply(Input::CommReject)) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      pending_peer_.reset();
      if (!temp_ || !live(*temp_)) {
        apply(Input::TempIdExpired);
      } else {
        start_emissions();
      }
      return;
    case MessageKind::HandoverCmd:
      if (!apply(Input::HandoverCmd) || !session_) {
        net_.drop(id_, "invalid-state", msg);
        return;
      }
      session_->rb = default_rb_;
      session_->mode = PathMode::Epc;
      net_.state(id_, fmt::format("rule peer={} peer_ip={} rb={}", session_->peer.str(),
                                  session_->peer_ip.str(), default_rb_.str()));
      return;
    case MessageKind::DataPacket:
      if (!ip_ || *p.peer_ip != *ip_) {
        net_.drop(id_, "wrong-ip", msg);
        return;
      }
      ++received_;
      return;
    default:
      net_.drop(id_, "unexpected", msg);
  }
}

void Ue::on_timer(const sim::TimerHandle& timer) {
  if (timer.tag == "temp") {
    if (faults_.ignore_temp_expiry) return;
    ++emission_gen_;
    if (holds_temp_id(phase_)) {
      temp_.reset();
      grant_.reset();
      apply(Input::TempIdExpired);
    }
  } else if (timer.tag == "retry") {
    if (phase_ == Phase::DiscoveryPending && spec_) send_discovery_request();
  }
}

}  // namespace d2d::ue
