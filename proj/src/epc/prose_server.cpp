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

#include "d2d/epc/prose_server.hpp"

#include <fmt/format.h>

#include "d2d/core/error.hpp"

namespace d2d::epc {

ProseServer::ProseServer(sim::Network& net, ProseConfig config, EntityId id)
    : id_(std::move(id)),
      net_(net),
      config_(config),
      corr_(id_.str() + "."),
      temps_(id_.str() + "-t") {
  if (config_.pool_slots <= 0 || config_.pool_period.count() <= 0 ||
      config_.temp_id_ttl.count() <= 0) {
    throw SimError("invalid-config", "prose server pool");
  }
}

void ProseServer::on_message(const Message& msg) {
  switch (msg.kind) {
    case MessageKind::D2DDiscoveryReq: on_request(msg); return;
    case MessageKind::ProseAuthResp: on_auth(msg); return;
    default: net_.drop(id_, "unexpected", msg);
  }
}

void ProseServer::on_request(const Message& msg) {
  Message out;
  out.kind = MessageKind::ProseAuthReq;
  out.src = id_;
  out.dst = EntityId{"hss"};
  out.corr = CorrId{corr_.next()};
  out.payload.d2d_id = msg.payload.d2d_id;
  out.payload.app_id = msg.payload.app_id;
  pending_.emplace(out.corr, Pending{msg.src, msg.corr, *msg.payload.app_id, *msg.payload.d2d_id});
  net_.send(std::move(out));
}

void ProseServer::on_auth(const Message& msg) {
  auto node = pending_.extract(msg.corr);
  if (node.empty()) {
    net_.drop(id_, "unknown-corr", msg);
    return;
  }
  const Pending& p = node.mapped();
  Message out;
  out.src = id_;
  out.dst = p.ue;
  out.corr = p.corr;
  if (msg.payload.cause || !msg.payload.services->contains(p.app)) {
    out.kind = MessageKind::D2DDiscoveryReject;
    out.payload.cause = msg.payload.cause.value_or("not-authorized");
  } else {
    const std::uint64_t n = temps_.count();
    out.kind = MessageKind::D2DDiscoveryAccept;
    out.payload.temp_id = TempD2DId{temps_.next(), id_, net_.now(), config_.temp_id_ttl};
    const TempD2DId& t = *out.payload.temp_id;
    std::string services;
    for (const auto& s : *msg.payload.services) services += (services.empty() ? "" : ",") + s.str();
    net_.state(id_, fmt::format("authz-verified d2d={} ue={} services={}", p.d2d.str(),
                                p.ue.str(), services));
    net_.state(id_, fmt::format("temp-issue temp={} ue={} d2d={} app={} corr={} until={}", t.value,
                                p.ue.str(), p.d2d.str(), p.app.str(), p.corr.str(),
                                format_time(t.expires_at())));
    DiscoveryResourceConfig cfg;
    cfg.slot_index = static_cast<int>(n % static_cast<std::uint64_t>(config_.pool_slots));
    cfg.pool_size = config_.pool_slots;
    cfg.period = config_.pool_period;
    out.payload.config = cfg;
  }
  net_.send(std::move(out));
}

}  // namespace d2d::epc
