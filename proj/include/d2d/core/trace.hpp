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

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/core/ids.hpp"
#include "d2d/core/time.hpp"

namespace d2d {

enum class TraceEvent : std::uint8_t { Send, Recv, TimerSet, TimerFire, StateChange, Drop };

std::string_view to_string(TraceEvent e) noexcept;
std::optional<TraceEvent> parse_trace_event(std::string_view name) noexcept;

// One line of the simulation trace. For send/recv `detail` is the wire form
// of the message (see format_wire); for state changes it is a label followed
// by key=value pairs.
struct TraceRecord {
  SimTime t{0};
  TraceEvent event = TraceEvent::StateChange;
  EntityId entity;
  std::string detail;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using Trace = std::vector<TraceRecord>;

// Line format, UTF-8, one record per line:
//
//   <t> <entity> <event> <detail>
//
// <t> is seconds with six fractional digits, <entity> and <event> contain no
// spaces, and <detail> is the remainder of the line (it may contain spaces
// but never a newline). Exactly one space separates <event> and <detail>,
// even when <detail> is empty.
//
// Throws SimError("unsorted-trace") when records are not in nondecreasing t,
// and SimError("invalid-record") for entities or details that cannot be
// represented on one line.
void serialize_trace(std::span<const TraceRecord> records, std::ostream& out);
std::string serialize_trace(std::span<const TraceRecord> records);

// Throws SimError("malformed-trace", "line N: ...") on parse failure.
Trace deserialize_trace(std::istream& in);
Trace deserialize_trace(std::string_view text);

// State-change details: "<label> key=value key=value ...".
struct Labels {
  std::string label;
  std::map<std::string, std::string, std::less<>> values;

  std::string_view get(std::string_view key) const;
};

Labels parse_labels(std::string_view detail);

}  // namespace d2d
