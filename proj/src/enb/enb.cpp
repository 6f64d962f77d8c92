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

#include "d2d/enb/enb.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "d2d/core/error.hpp"

namespace d2d::enb {
namespace {

std::string join(const std::set<D2DAppId>& services) {
  std::string out;
  for (const auto& s : services) {
    if (!out.empty()) out += ',';
    out += s.str();
  }
  return out;
}

constexpr std::string_view kTempTag = "temp:";
constexpr std::string_view kPairTag = "pair:";

}  // namespace

Enb::Enb(sim::Network& net, EntityId id, EnbConfig config, FaultSet faults)
    : id_(std::move(id)),
      net_(net),
      config_(config),
      faults_(faults),
      corr_(id_.str() + "."),
      temps_(id_.str() + "-t"),
      rbs_(id_.str() + "-rb"),
      pairs_(id_.str() + ".p"),
      handovers_(id_.str() + ".h"),
      pool_(config.pool_slots),
      cell_{config.capacity, config.preload} {
  if (config_.capacity <= 0 || config_.preload < 0 || config_.preload > config_.capacity) {
    throw SimError("invalid-config", id_.str() + " capacity");
  }
  if (config_.pool_period.count() <= 0 || config_.temp_id_ttl.count() <= 0) {
    throw SimError("invalid-config", id_.str() + " discovery timers");
  }
}

RadioBearerId Enb::next_rb() {
  last_rb_ = RadioBearerId{rbs_.next()};
  return last_rb_;
}

void Enb::on_message(const Message& msg) {
  switch (msg.kind) {
    case MessageKind::D2DDiscoveryReq: on_discovery(msg); return;
    case MessageKind::D2DAuthCheckResp: on_auth_check(msg); return;
    case MessageKind::AuthzPush:
      store_authz(*msg.payload.d2d_id, *msg.payload.ue, *msg.payload.services,
                  *msg.payload.validity);
      return;
    case MessageKind::D2DCommReq: on_comm(msg); return;
    case MessageKind::D2DBearerSetupResp: on_bearer_resp(msg); return;
    case MessageKind::RbSetupAck: on_rb_ack(msg); return;
    case MessageKind::DataPacket: enqueue(msg); return;
    case MessageKind::HandoverCmd: {
      Message out = msg;
      out.src = id_;
      out.dst = *msg.payload.ue;
      net_.send(std::move(out));
      return;
    }
    default: net_.drop(id_, "unexpected", msg);
  }
}

void Enb::on_nas_transit(Message& msg) {
  if (msg.kind == MessageKind::NasAttachAccept && msg.payload.d2d_id) {
    store_authz(*msg.payload.d2d_id, msg.dst, *msg.payload.services, *msg.payload.validity);
  } else if (msg.kind == MessageKind::PdnConnectResp && !msg.payload.cause &&
             classify(msg.dst) == EntityClass::Ue) {
    const RadioBearerId rb = next_rb();
    ues_[msg.dst] = UeEntry{*msg.payload.ip, rb};
    ip_owner_[*msg.payload.ip] = msg.dst;
    msg.payload.rb = rb;
  }
}

void Enb::store_authz(const D2DId& d2d, const EntityId& ue, const std::set<D2DAppId>& services,
                      SimTime validity) {
  if (validity.count() <= 0) return;
  const SimTime now = net_.now();
  cache_.store(AuthorizationEntry{d2d, services, now, validity});
  authz_owner_[d2d] = ue;
  net_.state(id_, fmt::format("authz-store d2d={} ue={} services={} until={}", d2d.str(), ue.str(),
                              join(services), format_time(now + validity)));
}

// ---------------------------------------------------------------- discovery

void Enb::reject_discovery(const EntityId& ue, const CorrId& corr, std::string cause) {
  Message out;
  out.kind = MessageKind::D2DDiscoveryReject;
  out.src = id_;
  out.dst = ue;
  out.corr = corr;
  out.payload.cause = std::move(cause);
  net_.send(std::move(out));
}

void Enb::on_discovery(const Message& msg) {
  const D2DId& d2d = *msg.payload.d2d_id;
  const D2DAppId& app = *msg.payload.app_id;
  if (!attached(msg.src)) {
    reject_discovery(msg.src, msg.corr, "not-attached");
    return;
  }
  if (faults_.skip_authz_check) {
    grant(msg.src, msg.corr, d2d, app);
    return;
  }
  if (const AuthorizationEntry* entry = cache_.lookup(d2d, net_.now())) {
    if (authz_owner_[d2d] != msg.src) {
      reject_discovery(msg.src, msg.corr, "not-authorized");
    } else if (!entry->authorizes(app)) {
      reject_discovery(msg.src, msg.corr, "not-authorized");
    } else {
      grant(msg.src, msg.corr, d2d, app);
    }
    return;
  }
  Message out;
  out.kind = MessageKind::D2DAuthCheckReq;
  out.src = id_;
  out.dst = EntityId{"mme"};
  out.corr = next_corr();
  out.payload.d2d_id = d2d;
  out.payload.app_id = app;
  out.payload.ue = msg.src;
  checks_.emplace(out.corr, PendingCheck{msg.src, msg.corr, d2d, app});
  net_.send(std::move(out));
}

void Enb::on_auth_check(const Message& msg) {
  auto node = checks_.extract(msg.corr);
  if (node.empty()) {
    net_.drop(id_, "unknown-corr", msg);
    return;
  }
  const PendingCheck& p = node.mapped();
  if (msg.payload.cause) {
    reject_discovery(p.ue, p.corr, *msg.payload.cause);
    return;
  }
  store_authz(p.d2d, p.ue, *msg.payload.services, *msg.payload.validity);
  net_.state(id_, fmt::format("authz-verified d2d={} ue={} services={}", p.d2d.str(), p.ue.str(),
                              join(*msg.payload.services)));
  if (msg.payload.services->contains(p.app)) {
    grant(p.ue, p.corr, p.d2d, p.app);
  } else {
    reject_discovery(p.ue, p.corr, "not-authorized");
  }
}

void Enb::free_slot(TempRecord& rec) {
  if (!rec.slot) return;
  if (pool_.release(*rec.slot, rec.temp.value)) {
    net_.state(id_, fmt::format("slot-free slot={} temp={}", *rec.slot, rec.temp.value));
  }
  rec.slot.reset();
}

void Enb::retire_temp(const std::string& value, std::string_view label) {
  auto it = temps_by_value_.find(value);
  if (it == temps_by_value_.end()) return;
  free_slot(it->second);
  net_.state(id_, fmt::format("{} temp={}", label, value));
  auto owner = temp_of_ue_.find(it->second.ue);
  if (owner != temp_of_ue_.end() && owner->second == value) temp_of_ue_.erase(owner);
  temps_by_value_.erase(it);
}

void Enb::grant(const EntityId& ue, const CorrId& corr, const D2DId& d2d, const D2DAppId& app) {
  // A new request replaces the UE's previous grant.
  if (auto prev = temp_of_ue_.find(ue); prev != temp_of_ue_.end()) {
    const std::string value = prev->second;
    net_.engine().cancel_timer(temps_by_value_.at(value).timer);
    retire_temp(value, "temp-revoke");
  }

  const std::string value = temps_.next();
  std::optional<int> slot;
  if (faults_.double_grant_slot && pool_.free_count() < pool_.size()) {
    for (int s = 0; s < pool_.size() && !slot; ++s) {
      if (pool_.holder(s)) slot = s;
    }
    pool_.force(*slot, value);
  } else {
    slot = pool_.allocate(value);
  }
  if (!slot) {
    reject_discovery(ue, corr, "no-resources");
    return;
  }

  const SimTime now = net_.now();
  TempD2DId temp{value, id_, now, config_.temp_id_ttl};
  net_.state(id_, fmt::format("temp-issue temp={} ue={} d2d={} app={} corr={} until={}", value,
                              ue.str(), d2d.str(), app.str(), corr.str(),
                              format_time(temp.expires_at())));
  net_.state(id_, fmt::format("slot-grant slot={} temp={}", *slot, value));
  sim::TimerHandle timer =
      net_.engine().set_timer(id_, std::string(kTempTag) + value, config_.temp_id_ttl);
  temps_by_value_.emplace(value, TempRecord{temp, ue, d2d, slot, std::move(timer)});
  temp_of_ue_[ue] = value;

  Message out;
  out.kind = MessageKind::D2DDiscoveryAccept;
  out.src = id_;
  out.dst = ue;
  out.corr = corr;
  out.payload.temp_id = temp;
  DiscoveryResourceConfig cfg;
  cfg.slot_index = *slot;
  cfg.pool_size = pool_.size();
  cfg.period = config_.pool_period;
  out.payload.config = cfg;
  net_.send(std::move(out));
}

void Enb::on_timer(const sim::TimerHandle& timer) {
  const std::string_view tag = timer.tag;
  if (tag.starts_with(kTempTag)) {
    retire_temp(std::string(tag.substr(kTempTag.size())), "temp-expire");
    return;
  }
  if (tag.starts_with(kPairTag)) {
    const std::string pair(tag.substr(kPairTag.size()));
    auto it = std::find_if(waiting_.begin(), waiting_.end(),
                           [&](const auto& kv) { return kv.second.pair == pair; });
    if (it == waiting_.end()) return;
    const CommRequest req = it->second.req;
    waiting_.erase(it);
    reject_comm(req.ue, req.corr, "timeout");
  }
}

// ------------------------------------------------------------ communication

void Enb::reject_comm(const EntityId& ue, const CorrId& corr, std::string cause) {
  Message out;
  out.kind = MessageKind::D2DCommReject;
  out.src = id_;
  out.dst = ue;
  out.corr = corr;
  out.payload.cause = std::move(cause);
  net_.send(std::move(out));
}

void Enb::on_comm(const Message& msg) {
  const SimTime now = net_.now();
  CommRequest req{msg.src, msg.corr, msg.payload.temp_id->value, *msg.payload.peer_temp_id,
                  msg.payload.qos.value_or(9)};

  auto own = temps_by_value_.find(req.own_temp);
  if (own == temps_by_value_.end() || !own->second.temp.live_at(now)) {
    reject_comm(req.ue, req.corr, "expired-id");
    return;
  }
  if (own->second.ue != msg.src || own->second.d2d != *msg.payload.d2d_id) {
    reject_comm(req.ue, req.corr, "invalid-id");
    return;
  }
  auto peer = temps_by_value_.find(req.peer_temp);
  if (peer == temps_by_value_.end() || !peer->second.temp.live_at(now)) {
    reject_comm(req.ue, req.corr, "expired-id");
    return;
  }
  const EntityId peer_ue = peer->second.ue;
  if (peer_ue == req.ue) {
    reject_comm(req.ue, req.corr, "invalid-id");
    return;
  }

  auto match = waiting_.find(peer_ue);
  if (match != waiting_.end() && match->second.req.peer_temp == req.own_temp &&
      match->second.req.own_temp == req.peer_temp) {
    Waiting first = std::move(match->second);
    waiting_.erase(match);
    net_.engine().cancel_timer(first.timer);
    establish(first.pair, std::move(first.req), std::move(req));
    return;
  }
  if (config_.pairing_window.count() <= 0) {
    reject_comm(req.ue, req.corr, "timeout");
    return;
  }
  if (waiting_.contains(req.ue)) {
    reject_comm(req.ue, req.corr, "pending");
    return;
  }
  std::string pair = pairs_.next();
  sim::TimerHandle timer =
      net_.engine().set_timer(id_, std::string(kPairTag) + pair, config_.pairing_window);
  const EntityId ue = req.ue;
  waiting_.emplace(ue, Waiting{std::move(pair), std::move(req), std::move(timer)});
}

void Enb::establish(const std::string& pair, CommRequest a, CommRequest b) {
  const PathMode mode = mode_select(cell_, config_.congestion_threshold, net_.position(a.ue),
                                    net_.position(b.ue), net_.d2d_radius(id_));
  net_.state(id_, fmt::format("mode pair={} ue_a={} ue_b={} path={}", pair, a.ue.str(), b.ue.str(),
                              mode == PathMode::D2D ? "d2d" : "epc"));
  if (mode == PathMode::Epc) {
    accept(a, b, PathMode::Epc, ues_.at(a.ue).default_rb);
    accept(b, a, PathMode::Epc, ues_.at(b.ue).default_rb);
    return;
  }
  const int qos = std::min(a.qos, b.qos);
  for (bool side_a : {true, false}) {
    const CommRequest& self = side_a ? a : b;
    const CommRequest& other = side_a ? b : a;
    Message out;
    out.kind = MessageKind::D2DBearerSetupReq;
    out.src = id_;
    out.dst = EntityId{"mme"};
    out.corr = next_corr();
    out.payload.ue = self.ue;
    out.payload.peer = other.ue;
    out.payload.enb = id_;
    out.payload.qos = qos;
    bearer_corr_.emplace(out.corr, std::make_pair(pair, side_a));
    net_.send(std::move(out));
  }
  pairings_.emplace(pair, Pairing{std::move(a), std::move(b), {}, {}, {}, 0, {}, {}, 0});
}

void Enb::on_bearer_resp(const Message& msg) {
  auto node = bearer_corr_.extract(msg.corr);
  if (node.empty()) {
    net_.drop(id_, "unknown-corr", msg);
    return;
  }
  const auto& [pair, side_a] = node.mapped();
  Pairing& p = pairings_.at(pair);
  if (msg.payload.cause) {
    p.cause = msg.payload.cause;
  } else {
    (side_a ? p.bearer_a : p.bearer_b) = msg.payload.d2d_bearer_id;
  }
  if (++p.responses < 2) return;

  if (p.cause) {
    reject_comm(p.a.ue, p.a.corr, *p.cause);
    reject_comm(p.b.ue, p.b.corr, *p.cause);
    pairings_.erase(pair);
    return;
  }
  p.rb_a = next_rb();
  p.rb_b = faults_.reuse_radio_bearer ? p.rb_a : next_rb();
  for (bool a : {true, false}) {
    Message out;
    out.kind = MessageKind::RbSetup;
    out.src = id_;
    out.dst = a ? p.a.ue : p.b.ue;
    out.corr = next_corr();
    out.payload.rb = a ? p.rb_a : p.rb_b;
    out.payload.d2d_bearer_id = a ? *p.bearer_a : *p.bearer_b;
    rb_corr_.emplace(out.corr, pair);
    net_.send(std::move(out));
  }
}

void Enb::on_rb_ack(const Message& msg) {
  auto node = rb_corr_.extract(msg.corr);
  if (node.empty()) {
    net_.drop(id_, "unknown-corr", msg);
    return;
  }
  const std::string pair = node.mapped();
  Pairing& p = pairings_.at(pair);
  if (++p.acks < 2) return;

  if (!faults_.skip_l2_install) {
    l2_.install(L2RouteEntry{p.rb_a, p.rb_b, p.a.ue, p.b.ue, {*p.bearer_a, *p.bearer_b}},
                faults_.reuse_radio_bearer);
    cell_.active_bearers += 2;
    net_.state(id_, fmt::format("l2-install rb_a={} rb_b={} ue_a={} ue_b={} bearers={},{}",
                                p.rb_a.str(), p.rb_b.str(), p.a.ue.str(), p.b.ue.str(),
                                p.bearer_a->str(), p.bearer_b->str()));
  }
  // The pair no longer needs its discovery resources.
  for (const EntityId& ue : {p.a.ue, p.b.ue}) {
    if (auto t = temp_of_ue_.find(ue); t != temp_of_ue_.end()) {
      free_slot(temps_by_value_.at(t->second));
    }
  }
  accept(p.a, p.b, PathMode::D2D, p.rb_a);
  accept(p.b, p.a, PathMode::D2D, p.rb_b);
  pairings_.erase(pair);
}

void Enb::accept(const CommRequest& to, const CommRequest& peer, PathMode mode,
                 const RadioBearerId& rb) {
  Message out;
  out.kind = MessageKind::D2DCommAccept;
  out.src = id_;
  out.dst = to.ue;
  out.corr = to.corr;
  out.payload.mode = mode;
  out.payload.peer = peer.ue;
  out.payload.peer_ip = ues_.at(peer.ue).ip;
  out.payload.rb = rb;
  net_.send(std::move(out));
}

// --------------------------------------------------------------- user plane

void Enb::enqueue(const Message& msg) {
  if (forward_queue_.empty()) {
    net_.engine().schedule(sim::ScenarioAction{[this] { flush(); }}, net_.now());
  }
  forward_queue_.push_back(msg);
}

// Packets that reached the eNB in the same instant leave in QoS-class order.
void Enb::flush() {
  std::vector<Message> batch;
  batch.swap(forward_queue_);
  std::stable_sort(batch.begin(), batch.end(), [](const Message& x, const Message& y) {
    return x.payload.qos.value_or(9) < y.payload.qos.value_or(9);
  });
  for (Message& m : batch) route(std::move(m));
}

void Enb::route(Message msg) {
  const EntityId from = msg.src;
  msg.src = id_;
  if (classify(from) == EntityClass::Pgw) {
    auto owner = ip_owner_.find(*msg.payload.peer_ip);
    if (owner == ip_owner_.end()) {
      msg.src = from;
      net_.drop(id_, "no-route", msg);
      return;
    }
    msg.dst = owner->second;
    msg.payload.rb = ues_.at(owner->second).default_rb;
    net_.send(std::move(msg));
    return;
  }

  const RadioBearerId rb = msg.payload.rb.value_or(RadioBearerId{});
  if (const L2RouteEntry* e = l2_.find(rb, from)) {
    const bool from_a = e->ue_a == from && e->rb_a == rb;
    if (faults_.route_d2d_via_pgw) {
      msg.dst = EntityId{"pgw"};
    } else {
      msg.dst = from_a ? e->ue_b : e->ue_a;
      msg.payload.rb = from_a ? e->rb_b : e->rb_a;
    }
    net_.send(std::move(msg));
    return;
  }
  auto ue = ues_.find(from);
  if ((ue != ues_.end() && ue->second.default_rb == rb) || handed_over_.contains(rb)) {
    msg.dst = EntityId{"pgw"};
    net_.send(std::move(msg));
    return;
  }
  msg.src = from;
  net_.drop(id_, "no-route", msg);
}

// ----------------------------------------------------------------- mobility

void Enb::on_epoch() {
  if (l2_.size() == 0) return;
  const sim::Position& here = net_.position(id_);
  const double radius = net_.d2d_radius(id_);
  std::vector<L2RouteEntry> leaving;
  for (const auto& [key, e] : l2_.entries()) {
    const sim::Position& a = net_.position(e.ue_a);
    const sim::Position& b = net_.position(e.ue_b);
    if (sim::in_d2d_range(a, b, radius)) continue;
    if (sim::distance(here, a) > config_.coverage_m || sim::distance(here, b) > config_.coverage_m) {
      continue;
    }
    leaving.push_back(e);
  }
  for (const auto& e : leaving) handover(e);
}

void Enb::handover(const L2RouteEntry& e) {
  const std::string id = handovers_.next();
  l2_.remove(e.rb_a);
  cell_.active_bearers -= 2;
  handed_over_.insert(e.rb_a);
  handed_over_.insert(e.rb_b);
  net_.state(id_, fmt::format("handover id={} ue_a={} ue_b={} bearers={},{}", id, e.ue_a.str(),
                              e.ue_b.str(), e.d2d_bearer_ids.first.str(),
                              e.d2d_bearer_ids.second.str()));
  net_.state(id_, fmt::format("l2-remove rb_a={} rb_b={} ue_a={} ue_b={} bearers={},{}",
                              e.rb_a.str(), e.rb_b.str(), e.ue_a.str(), e.ue_b.str(),
                              e.d2d_bearer_ids.first.str(), e.d2d_bearer_ids.second.str()));
  for (const BearerId& b : {e.d2d_bearer_ids.first, e.d2d_bearer_ids.second}) {
    Message out;
    out.kind = MessageKind::BearerRelease;
    out.src = id_;
    out.dst = EntityId{"mme"};
    out.corr = next_corr();
    out.payload.d2d_bearer_id = b;
    net_.send(std::move(out));
  }
}

}  // namespace d2d::enb
