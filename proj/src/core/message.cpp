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

#include "d2d/core/message.hpp"

#include <fmt/format.h>

namespace d2d {
namespace {

constexpr std::array<std::string_view, kMessageKindCount> kKindNames = {
    "NasAttachReq",       "NasAttachAccept",  "UpdateLocationReq", "UpdateLocationResp",
    "PdnConnectReq",      "PdnConnectResp",   "D2DDiscoveryReq",   "D2DAuthCheckReq",
    "D2DAuthCheckResp",   "D2DDiscoveryAccept", "D2DDiscoveryReject", "AirAnnounce",
    "AirQuery",           "AirResponse",      "D2DCommReq",        "D2DBearerSetupReq",
    "D2DBearerSetupResp", "RbSetup",          "RbSetupAck",        "D2DCommAccept",
    "DataPacket",         "HandoverCmd",      "BearerRelease",     "NasAttachReject",
    "AuthzPush",          "D2DCommReject",    "ProseAuthReq",      "ProseAuthResp",
};

constexpr std::array<std::string_view, 22> kFieldNames = {
    "imsi", "d2d_flag", "d2d_id", "services", "app_id", "validity", "temp_id", "peer_temp_id",
    "config", "cause", "ue", "peer", "enb", "qos", "d2d_bearer_id", "rb", "ip", "peer_ip", "mode",
    "flow", "seq", "data",
};

using F = Field;

struct Requirement {
  std::vector<Field> full;
  std::vector<Field> with_cause;  // empty: kind has no negative form
};

const std::array<Requirement, kMessageKindCount>& requirements() {
  static const std::array<Requirement, kMessageKindCount> table = {{
      /* NasAttachReq */ {{F::imsi, F::d2d_flag}, {}},
      /* NasAttachAccept */ {{F::imsi}, {}},
      /* UpdateLocationReq */ {{F::imsi, F::d2d_flag}, {}},
      /* UpdateLocationResp */ {{F::imsi}, {F::imsi, F::cause}},
      /* PdnConnectReq */ {{F::ue, F::imsi}, {}},
      /* PdnConnectResp */ {{F::ue, F::ip}, {F::ue, F::cause}},
      /* D2DDiscoveryReq */ {{F::d2d_id, F::app_id}, {}},
      /* D2DAuthCheckReq */ {{F::d2d_id, F::app_id}, {}},
      /* D2DAuthCheckResp */ {{F::d2d_id, F::services, F::validity}, {F::d2d_id, F::cause}},
      /* D2DDiscoveryAccept */ {{F::temp_id, F::config}, {}},
      /* D2DDiscoveryReject */ {{F::cause}, {}},
      /* AirAnnounce */ {{F::temp_id, F::app_id}, {}},
      /* AirQuery */ {{F::temp_id, F::app_id}, {}},
      /* AirResponse */ {{F::temp_id, F::app_id}, {}},
      /* D2DCommReq */ {{F::d2d_id, F::temp_id, F::peer_temp_id}, {}},
      /* D2DBearerSetupReq */ {{F::ue, F::peer, F::enb, F::qos}, {}},
      /* D2DBearerSetupResp */ {{F::ue, F::d2d_bearer_id}, {F::ue, F::cause}},
      /* RbSetup */ {{F::rb, F::d2d_bearer_id}, {}},
      /* RbSetupAck */ {{F::rb}, {}},
      /* D2DCommAccept */ {{F::mode, F::peer, F::peer_ip, F::rb}, {}},
      /* DataPacket */ {{F::flow, F::seq, F::data, F::peer_ip}, {}},
      /* HandoverCmd */ {{F::d2d_bearer_id, F::ue}, {}},
      /* BearerRelease */ {{F::d2d_bearer_id}, {}},
      /* NasAttachReject */ {{F::cause}, {}},
      /* AuthzPush */ {{F::ue, F::d2d_id, F::services, F::validity}, {}},
      /* D2DCommReject */ {{F::cause}, {}},
      /* ProseAuthReq */ {{F::d2d_id, F::app_id}, {}},
      /* ProseAuthResp */ {{F::d2d_id, F::services}, {F::d2d_id, F::cause}},
  }};
  return table;
}

bool well_formed(const Payload& p, Field f) {
  switch (f) {
    case F::d2d_id: return !p.d2d_id->empty();
    case F::app_id: return !p.app_id->empty();
    case F::temp_id: return !p.temp_id->value.empty() && p.temp_id->ttl.count() > 0;
    case F::peer_temp_id: return !p.peer_temp_id->empty();
    case F::config:
      return p.config->pool_size > 0 && p.config->slot_index >= 0 &&
             p.config->slot_index < p.config->pool_size && p.config->period.count() > 0;
    case F::cause: return !p.cause->empty();
    case F::ue: return !p.ue->empty();
    case F::peer: return !p.peer->empty();
    case F::enb: return !p.enb->empty();
    case F::qos: return valid_qos_class(*p.qos);
    case F::d2d_bearer_id: return !p.d2d_bearer_id->empty();
    case F::rb: return !p.rb->empty();
    case F::ip: return !p.ip->empty();
    case F::peer_ip: return !p.peer_ip->empty();
    case F::validity: return p.validity->count() >= 0;
    case F::flow: return !p.flow->empty();
    default: return true;
  }
}

}  // namespace

std::string_view to_string(MessageKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<MessageKind> parse_message_kind(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<MessageKind>(i);
  }
  return std::nullopt;
}

bool is_air(MessageKind kind) noexcept {
  return kind == MessageKind::AirAnnounce || kind == MessageKind::AirQuery ||
         kind == MessageKind::AirResponse;
}

bool is_control(MessageKind kind) noexcept {
  return !is_air(kind) && kind != MessageKind::DataPacket;
}

Message reply_to(const Message& request, MessageKind kind) {
  Message out;
  out.kind = kind;
  out.src = request.dst;
  out.dst = request.src;
  out.corr = request.corr;
  return out;
}

std::string_view to_string(Field f) noexcept { return kFieldNames[static_cast<std::size_t>(f)]; }

bool has_field(const Payload& p, Field f) noexcept {
  switch (f) {
    case F::imsi: return p.imsi.has_value();
    case F::d2d_flag: return p.d2d_flag.has_value();
    case F::d2d_id: return p.d2d_id.has_value();
    case F::services: return p.services.has_value();
    case F::app_id: return p.app_id.has_value();
    case F::validity: return p.validity.has_value();
    case F::temp_id: return p.temp_id.has_value();
    case F::peer_temp_id: return p.peer_temp_id.has_value();
    case F::config: return p.config.has_value();
    case F::cause: return p.cause.has_value();
    case F::ue: return p.ue.has_value();
    case F::peer: return p.peer.has_value();
    case F::enb: return p.enb.has_value();
    case F::qos: return p.qos.has_value();
    case F::d2d_bearer_id: return p.d2d_bearer_id.has_value();
    case F::rb: return p.rb.has_value();
    case F::ip: return p.ip.has_value();
    case F::peer_ip: return p.peer_ip.has_value();
    case F::mode: return p.mode.has_value();
    case F::flow: return p.flow.has_value();
    case F::seq: return p.seq.has_value();
    case F::data: return p.data != nullptr;
  }
  return false;
}

std::span<const Field> required_fields(MessageKind kind, bool with_cause) noexcept {
  const auto& req = requirements()[static_cast<std::size_t>(kind)];
  if (with_cause && !req.with_cause.empty()) return req.with_cause;
  return req.full;
}

std::optional<std::string> validate_message(const Message& msg) {
  if (msg.src.empty()) return std::string("src");
  if (msg.dst.empty()) return std::string("dst");
  if (msg.src == msg.dst) return std::string("src=dst");
  const bool negative = msg.payload.cause.has_value();
  for (Field f : required_fields(msg.kind, negative)) {
    if (!has_field(msg.payload, f) || !well_formed(msg.payload, f)) {
      return std::string(to_string(f));
    }
  }
  // Optional fields, when present, must still be well formed.
  if (msg.payload.qos && !valid_qos_class(*msg.payload.qos)) return std::string("qos");
  return std::nullopt;
}

std::uint32_t payload_digest(std::span<const std::uint8_t> bytes) noexcept {
  std::uint32_t h = 2166136261u;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 16777619u;
  }
  return h;
}

std::string format_wire(const Message& msg) {
  std::string out = fmt::format("{}({}->{},{})", to_string(msg.kind), msg.src.str(),
                                msg.dst.str(), msg.corr.str());
  const Payload& p = msg.payload;
  if (p.cause) fmt::format_to(std::back_inserter(out), " cause={}", *p.cause);
  if (msg.kind == MessageKind::DataPacket && p.data) {
    fmt::format_to(std::back_inserter(out), " digest={:08x}", payload_digest(*p.data));
  }
  if (msg.kind == MessageKind::NasAttachAccept && p.d2d_id) out += " authz=1";
  if (msg.kind == MessageKind::D2DCommAccept && p.mode) {
    out += *p.mode == PathMode::D2D ? " mode=d2d" : " mode=epc";
  }
  return out;
}

std::string_view WireView::attr(std::string_view key) const {
  auto it = attrs.find(key);
  return it == attrs.end() ? std::string_view{} : std::string_view{it->second};
}

std::optional<WireView> parse_wire(std::string_view detail) {
  const auto open = detail.find('(');
  const auto close = detail.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    return std::nullopt;
  }
  auto kind = parse_message_kind(detail.substr(0, open));
  if (!kind) return std::nullopt;
  const std::string_view inner = detail.substr(open + 1, close - open - 1);
  const auto arrow = inner.find("->");
  const auto comma = inner.find(',', arrow == std::string_view::npos ? 0 : arrow);
  if (arrow == std::string_view::npos || comma == std::string_view::npos) return std::nullopt;
  WireView view;
  view.kind = *kind;
  view.src = EntityId{std::string(inner.substr(0, arrow))};
  view.dst = EntityId{std::string(inner.substr(arrow + 2, comma - arrow - 2))};
  view.corr = CorrId{std::string(inner.substr(comma + 1))};
  if (view.src.empty() || view.dst.empty()) return std::nullopt;
  std::string_view rest = detail.substr(close + 1);
  while (!rest.empty()) {
    if (rest.front() != ' ') return std::nullopt;
    rest.remove_prefix(1);
    const auto end = rest.find(' ');
    const std::string_view token = rest.substr(0, end);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) return std::nullopt;
    view.attrs.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
  }
  return view;
}

}  // namespace d2d
