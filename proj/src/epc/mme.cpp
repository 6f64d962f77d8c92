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

#include "d2d/epc/mme.hpp"

#include <algorithm>

#include "d2d/core/error.hpp"

namespace d2d::epc {

Mme::Mme(sim::Network& net, MmeConfig config, EntityId id)
    : id_(std::move(id)), net_(net), config_(config), corr_(id_.str() + ".") {
  if (config_.authz_validity.count() < 0) throw SimError("invalid-duration", "authz validity");
}

const UeContext* Mme::context(const EntityId& ue) const {
  auto it = contexts_.find(ue);
  return it == contexts_.end() ? nullptr : &it->second;
}

const UeContext* Mme::context(const D2DId& d2d_id) const {
  auto it = by_d2d_.find(d2d_id);
  return it == by_d2d_.end() ? nullptr : context(it->second);
}

bool Mme::d2d_authorized(const EntityId& ue, const EntityId& enb) const {
  const UeContext* ctx = context(ue);
  return ctx != nullptr && !ctx->d2d_id.empty() && !ctx->services.empty() &&
         ctx->serving_enb == enb;
}

BearerId Mme::create_d2d_bearer(const EntityId& ue, const EntityId& peer, const EntityId& enb,
                                int qos) {
  const UeContext* a = context(ue);
  const UeContext* b = context(peer);
  if (a == nullptr || b == nullptr || !a->default_bearer || !b->default_bearer) {
    throw SimError("not-attached", (a == nullptr ? ue : peer).str());
  }
  if (a->serving_enb != b->serving_enb) throw SimError("not-supported", "inter-eNB pair");
  if (!d2d_authorized(ue, enb) || !d2d_authorized(peer, enb)) {
    throw SimError("not-authorized", ue.str());
  }
  BearerId id{bearer_ids_.next()};
  bearers_.emplace(id, D2DBearerRecord{id, ue, peer, enb, qos, BearerState::Active});
  contexts_.at(ue).d2d_bearers.push_back(id);
  net_.state(id_, "bearer-active id=" + id.str() + " ue=" + ue.str() + " peer=" + peer.str() +
                      " enb=" + enb.str() + " ip=" + a->default_bearer->ip.str());
  return id;
}

void Mme::handover_to_epc(const BearerId& id) {
  auto it = bearers_.find(id);
  if (it == bearers_.end()) throw SimError("unknown-bearer", id.str());
  if (it->second.state != BearerState::Active) throw SimError("invalid-state", id.str());
  it->second.state = BearerState::HandedOver;
  net_.state(id_, "bearer-handed_over id=" + id.str());
}

const D2DBearerRecord* Mme::bearer(const BearerId& id) const {
  auto it = bearers_.find(id);
  return it == bearers_.end() ? nullptr : &it->second;
}

std::size_t Mme::active_bearers() const {
  return static_cast<std::size_t>(std::count_if(bearers_.begin(), bearers_.end(), [](const auto& kv) {
    return kv.second.state == BearerState::Active;
  }));
}

void Mme::on_message(const Message& msg) {
  switch (msg.kind) {
    case MessageKind::NasAttachReq: on_attach(msg); return;
    case MessageKind::UpdateLocationResp: on_location(msg); return;
    case MessageKind::PdnConnectResp: on_pdn(msg); return;
    case MessageKind::D2DAuthCheckReq: on_auth_check(msg); return;
    case MessageKind::D2DBearerSetupReq: on_bearer_setup(msg); return;
    case MessageKind::BearerRelease: on_release(msg); return;
    default: net_.drop(id_, "unexpected", msg);
  }
}

void Mme::reject_attach(const EntityId& ue, const CorrId& corr, std::string cause) {
  Message out;
  out.kind = MessageKind::NasAttachReject;
  out.src = id_;
  out.dst = ue;
  out.corr = corr;
  out.payload.cause = std::move(cause);
  net_.send(std::move(out));
}

void Mme::on_attach(const Message& msg) {
  const Imsi& imsi = *msg.payload.imsi;
  const auto busy = [&](const auto& pending) {
    return std::any_of(pending.begin(), pending.end(), [&](const auto& kv) {
      return kv.second.ue == msg.src || kv.second.imsi == imsi;
    });
  };
  const bool imsi_in_use = std::any_of(contexts_.begin(), contexts_.end(),
                                       [&](const auto& kv) { return kv.second.imsi == imsi; });
  if (attached(msg.src) || imsi_in_use || busy(pending_location_) || busy(pending_pdn_)) {
    reject_attach(msg.src, msg.corr, "already-attached");
    return;
  }
  Message out;
  out.kind = MessageKind::UpdateLocationReq;
  out.src = id_;
  out.dst = EntityId{"hss"};
  out.corr = next_corr();
  out.payload.imsi = imsi;
  out.payload.d2d_flag = *msg.payload.d2d_flag;
  pending_location_.emplace(out.corr, PendingAttach{msg.src, imsi, *msg.payload.d2d_flag, msg.corr});
  net_.send(std::move(out));
}

void Mme::on_location(const Message& msg) {
  auto node = pending_location_.extract(msg.corr);
  if (node.empty()) {
    net_.drop(id_, "unknown-corr", msg);
    return;
  }
  const PendingAttach& p = node.mapped();
  if (msg.payload.cause) {
    reject_attach(p.ue, p.attach_corr, *msg.payload.cause);
    return;
  }
  UeContext ctx{p.ue, p.imsi, {}, {}, net_.serving_cell(p.ue), std::nullopt, {}};
  if (p.d2d && msg.payload.d2d_id) {
    ctx.d2d_id = *msg.payload.d2d_id;
    ctx.services = msg.payload.services.value_or(std::set<D2DAppId>{});
    by_d2d_[ctx.d2d_id] = p.ue;
  }
  net_.state(id_, "context-create ue=" + p.ue.str() + " imsi=" + p.imsi.str());

  // Subscribers without any D2D service get nothing to cache.
  const bool grant = !ctx.d2d_id.empty() && !ctx.services.empty() &&
                     config_.authz_validity.count() > 0;
  Message accept;
  accept.kind = MessageKind::NasAttachAccept;
  accept.src = id_;
  accept.dst = p.ue;
  accept.corr = p.attach_corr;
  accept.payload.imsi = p.imsi;
  if (grant && config_.push == AuthzPush::Piggyback) {
    accept.payload.d2d_id = ctx.d2d_id;
    accept.payload.services = ctx.services;
    accept.payload.validity = config_.authz_validity;
  }
  net_.send(std::move(accept));
  if (grant && config_.push == AuthzPush::Separate) {
    Message push;
    push.kind = MessageKind::AuthzPush;
    push.src = id_;
    push.dst = ctx.serving_enb;
    push.corr = next_corr();
    push.payload.ue = p.ue;
    push.payload.d2d_id = ctx.d2d_id;
    push.payload.services = ctx.services;
    push.payload.validity = config_.authz_validity;
    net_.send(std::move(push));
  }

  Message pdn;
  pdn.kind = MessageKind::PdnConnectReq;
  pdn.src = id_;
  pdn.dst = EntityId{"pgw"};
  pdn.corr = next_corr();
  pdn.payload.ue = p.ue;
  pdn.payload.imsi = p.imsi;
  pending_pdn_.emplace(pdn.corr, p);
  contexts_.emplace(p.ue, std::move(ctx));
  net_.send(std::move(pdn));
}

void Mme::on_pdn(const Message& msg) {
  auto node = pending_pdn_.extract(msg.corr);
  if (node.empty()) {
    net_.drop(id_, "unknown-corr", msg);
    return;
  }
  const PendingAttach& p = node.mapped();
  Message out;
  out.kind = MessageKind::PdnConnectResp;
  out.src = id_;
  out.dst = p.ue;
  out.corr = p.attach_corr;
  out.payload.ue = p.ue;
  if (msg.payload.cause) {
    out.payload.cause = msg.payload.cause;
  } else {
    BearerContext bearer;
    bearer.owner = p.ue;
    bearer.ip = *msg.payload.ip;
    contexts_.at(p.ue).default_bearer = bearer;
    out.payload.ip = msg.payload.ip;
  }
  net_.send(std::move(out));
}

void Mme::on_auth_check(const Message& msg) {
  Message out = reply_to(msg, MessageKind::D2DAuthCheckResp);
  out.payload.d2d_id = msg.payload.d2d_id;
  const UeContext* ctx = context(*msg.payload.d2d_id);
  if (ctx == nullptr) {
    out.payload.cause = "not-attached";
  } else if (msg.payload.ue && *msg.payload.ue != ctx->ue) {
    out.payload.cause = "not-authorized";
  } else {
    out.payload.services = ctx->services;
    out.payload.validity = config_.authz_validity;
  }
  net_.send(std::move(out));
}

void Mme::on_bearer_setup(const Message& msg) {
  Message out = reply_to(msg, MessageKind::D2DBearerSetupResp);
  out.payload.ue = msg.payload.ue;
  try {
    out.payload.d2d_bearer_id =
        create_d2d_bearer(*msg.payload.ue, *msg.payload.peer, *msg.payload.enb, *msg.payload.qos);
  } catch (const SimError& e) {
    out.payload.cause = e.cause();
  }
  net_.send(std::move(out));
}

void Mme::on_release(const Message& msg) {
  try {
    handover_to_epc(*msg.payload.d2d_bearer_id);
  } catch (const SimError& e) {
    net_.drop(id_, e.cause(), msg);
    return;
  }
  Message out = reply_to(msg, MessageKind::HandoverCmd);
  out.payload.d2d_bearer_id = msg.payload.d2d_bearer_id;
  out.payload.ue = bearers_.at(*msg.payload.d2d_bearer_id).ue;
  net_.send(std::move(out));
}

}  // namespace d2d::epc
