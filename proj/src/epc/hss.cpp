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

#include "d2d/epc/hss.hpp"

#include "d2d/core/error.hpp"

namespace d2d::epc {

Hss::Hss(sim::Network& net, EntityId id) : id_(std::move(id)), net_(net) {}

void Hss::add_subscriber(SubscriberProfile profile) {
  if (by_imsi_.contains(profile.imsi)) throw SimError("duplicate-imsi", profile.imsi.str());
  if (!profile.d2d_id.empty()) {
    if (by_d2d_.contains(profile.d2d_id)) {
      throw SimError("duplicate-d2d-id", profile.d2d_id.str());
    }
    by_d2d_.emplace(profile.d2d_id, profile.imsi);
  }
  Imsi key = profile.imsi;
  by_imsi_.emplace(std::move(key), std::move(profile));
}

SubscriberProfile Hss::update_location(const Imsi& imsi, bool d2d_check) const {
  const SubscriberProfile* p = find(imsi);
  if (p == nullptr) throw SimError("unknown-subscriber", imsi.str());
  if (d2d_check) return *p;
  return SubscriberProfile{p->imsi, {}, {}};
}

const SubscriberProfile* Hss::find(const Imsi& imsi) const {
  auto it = by_imsi_.find(imsi);
  return it == by_imsi_.end() ? nullptr : &it->second;
}

const SubscriberProfile* Hss::find(const D2DId& d2d_id) const {
  auto it = by_d2d_.find(d2d_id);
  return it == by_d2d_.end() ? nullptr : find(it->second);
}

void Hss::on_message(const Message& msg) {
  Message out;
  switch (msg.kind) {
    case MessageKind::UpdateLocationReq: {
      out = reply_to(msg, MessageKind::UpdateLocationResp);
      out.payload.imsi = msg.payload.imsi;
      try {
        SubscriberProfile p = update_location(*msg.payload.imsi, *msg.payload.d2d_flag);
        if (!p.d2d_id.empty()) {
          out.payload.d2d_id = p.d2d_id;
          out.payload.services = p.authorized_services;
        }
      } catch (const SimError& e) {
        out.payload.cause = e.cause();
      }
      break;
    }
    case MessageKind::ProseAuthReq: {
      out = reply_to(msg, MessageKind::ProseAuthResp);
      out.payload.d2d_id = msg.payload.d2d_id;
      if (const SubscriberProfile* p = find(*msg.payload.d2d_id)) {
        out.payload.services = p->authorized_services;
      } else {
        out.payload.cause = "unknown-subscriber";
      }
      break;
    }
    default:
      net_.drop(id_, "unexpected", msg);
      return;
  }
  net_.send(std::move(out));
}

}  // namespace d2d::epc
