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

#include "d2d/epc/pgw.hpp"

#include "d2d/core/error.hpp"

namespace d2d::epc {

Pgw::Pgw(sim::Network& net, AttachedFn is_attached, EntityId id)
    : id_(std::move(id)), net_(net), is_attached_(std::move(is_attached)) {}

IpAddress Pgw::establish_pdn(const EntityId& ue) {
  if (!is_attached_ || !is_attached_(ue)) throw SimError("not-attached", ue.str());
  if (bearers_.contains(ue)) throw SimError("duplicate-pdn", ue.str());
  IpAddress ip{ips_.next()};
  BearerContext bearer;
  bearer.owner = ue;
  bearer.ip = ip;
  bearers_.emplace(ue, std::move(bearer));
  owners_.emplace(ip, ue);
  net_.state(id_, "pdn ue=" + ue.str() + " ip=" + ip.str());
  return ip;
}

const BearerContext* Pgw::default_bearer(const EntityId& ue) const {
  auto it = bearers_.find(ue);
  return it == bearers_.end() ? nullptr : &it->second;
}

void Pgw::on_message(const Message& msg) {
  switch (msg.kind) {
    case MessageKind::PdnConnectReq: {
      Message out = reply_to(msg, MessageKind::PdnConnectResp);
      out.payload.ue = msg.payload.ue;
      try {
        out.payload.ip = establish_pdn(*msg.payload.ue);
      } catch (const SimError& e) {
        out.payload.cause = e.cause();
      }
      net_.send(std::move(out));
      return;
    }
    case MessageKind::DataPacket:
      forward(msg);
      return;
    default:
      net_.drop(id_, "unexpected", msg);
  }
}

void Pgw::forward(const Message& msg) {
  auto it = owners_.find(*msg.payload.peer_ip);
  if (it == owners_.end()) {
    net_.drop(id_, "no-route", msg);
    return;
  }
  Message out = msg;
  out.src = id_;
  out.dst = net_.serving_cell(it->second);
  net_.send(std::move(out));
}

}  // namespace d2d::epc
