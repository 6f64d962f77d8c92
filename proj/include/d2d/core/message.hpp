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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/core/ids.hpp"
#include "d2d/core/profiles.hpp"

namespace d2d {

// Every control, discovery and data message exchanged by the simulated
// entities. The first 23 kinds form the attach/discovery/communication call
// flows; the tail carries reject legs, the optional separate authorization
// push and the ProSe-server discovery variant.
enum class MessageKind : std::uint8_t {
  NasAttachReq,
  NasAttachAccept,
  UpdateLocationReq,
  UpdateLocationResp,
  PdnConnectReq,
  PdnConnectResp,
  D2DDiscoveryReq,
  D2DAuthCheckReq,
  D2DAuthCheckResp,
  D2DDiscoveryAccept,
  D2DDiscoveryReject,
  AirAnnounce,
  AirQuery,
  AirResponse,
  D2DCommReq,
  D2DBearerSetupReq,
  D2DBearerSetupResp,
  RbSetup,
  RbSetupAck,
  D2DCommAccept,
  DataPacket,
  HandoverCmd,
  BearerRelease,
  NasAttachReject,
  AuthzPush,
  D2DCommReject,
  ProseAuthReq,
  ProseAuthResp,
};

inline constexpr std::size_t kMessageKindCount = 28;

std::string_view to_string(MessageKind kind) noexcept;
std::optional<MessageKind> parse_message_kind(std::string_view name) noexcept;

// Air-interface discovery messages and user data are not control signalling.
bool is_control(MessageKind kind) noexcept;
bool is_air(MessageKind kind) noexcept;

using Bytes = std::vector<std::uint8_t>;

// Kind-specific fields. Which ones must be present is decided per kind by
// validate_message.
struct Payload {
  std::optional<Imsi> imsi;
  std::optional<bool> d2d_flag;
  std::optional<D2DId> d2d_id;
  std::optional<std::set<D2DAppId>> services;
  std::optional<D2DAppId> app_id;
  std::optional<SimTime> validity;
  std::optional<TempD2DId> temp_id;
  std::optional<std::string> peer_temp_id;
  std::optional<DiscoveryResourceConfig> config;
  std::optional<std::string> cause;
  std::optional<EntityId> ue;
  std::optional<EntityId> peer;
  std::optional<EntityId> enb;
  std::optional<int> qos;
  std::optional<BearerId> d2d_bearer_id;
  std::optional<RadioBearerId> rb;
  std::optional<IpAddress> ip;
  std::optional<IpAddress> peer_ip;
  std::optional<PathMode> mode;
  std::optional<std::map<std::string, std::string>> attrs;
  std::optional<std::string> flow;
  std::optional<std::uint64_t> seq;
  std::shared_ptr<const Bytes> data;
};

struct Message {
  MessageKind kind = MessageKind::DataPacket;
  EntityId src;
  EntityId dst;
  CorrId corr;
  Payload payload;
};

// Response skeleton: endpoints swapped, correlation id kept.
Message reply_to(const Message& request, MessageKind kind);

enum class Field : std::uint8_t {
  imsi, d2d_flag, d2d_id, services, app_id, validity, temp_id, peer_temp_id,
  config, cause, ue, peer, enb, qos, d2d_bearer_id, rb, ip, peer_ip, mode,
  flow, seq, data,
};

std::string_view to_string(Field f) noexcept;
bool has_field(const Payload& p, Field f) noexcept;

// Fields a message of `kind` must carry. For response kinds that can carry a
// negative outcome, `with_cause` selects the reduced list used when a cause
// is present.
std::span<const Field> required_fields(MessageKind kind, bool with_cause = false) noexcept;

// Returns the name of the first missing or ill-formed field, "src=dst" for a
// self-addressed message, or nullopt when the message is well formed.
std::optional<std::string> validate_message(const Message& msg);

// 32-bit FNV-1a over the payload bytes; rendered in traces as digest=xxxxxxxx.
std::uint32_t payload_digest(std::span<const std::uint8_t> bytes) noexcept;

// Trace rendering of a message: `Kind(src->dst,corr)` followed by optional
// ` key=value` attributes (cause, digest, authz, mode).
std::string format_wire(const Message& msg);

struct WireView {
  MessageKind kind{};
  EntityId src;
  EntityId dst;
  CorrId corr;
  std::map<std::string, std::string, std::less<>> attrs;

  std::string_view attr(std::string_view key) const;
};

std::optional<WireView> parse_wire(std::string_view detail);

}  // namespace d2d
