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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "d2d/core/time.hpp"

namespace d2d {

// Opaque string identifier, distinct per Tag so that an IP token can never be
// passed where a bearer id is expected.
template <typename Tag>
class Token {
 public:
  Token() = default;
  explicit Token(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Token&, const Token&) = default;

 private:
  std::string value_;
};

using EntityId = Token<struct EntityIdTag>;
using D2DId = Token<struct D2DIdTag>;
using D2DAppId = Token<struct D2DAppIdTag>;
using IpAddress = Token<struct IpAddressTag>;
using BearerId = Token<struct BearerIdTag>;
using RadioBearerId = Token<struct RadioBearerIdTag>;
using CorrId = Token<struct CorrIdTag>;

// Subscriber identity: exactly 15 decimal digits.
class Imsi {
 public:
  static std::optional<Imsi> parse(std::string_view digits);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const Imsi&, const Imsi&) = default;

 private:
  explicit Imsi(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

// Short-lived identifier minted by an eNB for over-the-air discovery.
struct TempD2DId {
  std::string value;
  EntityId issued_by;
  SimTime issued_at{0};
  SimTime ttl{0};

  SimTime expires_at() const noexcept { return issued_at + ttl; }
  bool live_at(SimTime now) const noexcept { return now < expires_at(); }

  friend bool operator==(const TempD2DId&, const TempD2DId&) = default;
};

enum class EntityClass { Ue, Enb, Mme, Hss, Pgw, Prose, Broadcast, Unknown };

// Entity ids follow a naming convention so that traces are self-describing:
// "ue*", "enb*", "mme", "hss", "pgw", "prose", and "*" for air broadcast.
EntityClass classify(const EntityId& id) noexcept;
std::string_view to_string(EntityClass c) noexcept;

inline const EntityId kBroadcast{"*"};

// Monotonic counter used for deterministic identifier generation.
class IdCounter {
 public:
  explicit IdCounter(std::string prefix) : prefix_(std::move(prefix)) {}
  std::string next() { return prefix_ + std::to_string(++count_); }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::string prefix_;
  std::uint64_t count_ = 0;
};

}  // namespace d2d

template <typename Tag>
struct std::hash<d2d::Token<Tag>> {
  std::size_t operator()(const d2d::Token<Tag>& t) const noexcept {
    return std::hash<std::string>{}(t.str());
  }
};

template <>
struct std::hash<d2d::Imsi> {
  std::size_t operator()(const d2d::Imsi& i) const noexcept {
    return std::hash<std::string>{}(i.str());
  }
};
