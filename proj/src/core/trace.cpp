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

#include "d2d/core/trace.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>

#include "d2d/core/error.hpp"

namespace d2d {
namespace {

constexpr std::array<std::string_view, 6> kEventNames = {
    "send", "recv", "timer_set", "timer_fire", "state_change", "drop"};

void check_record(const TraceRecord& r) {
  const std::string& e = r.entity.str();
  if (e.empty() || e.find_first_of(" \n\r") != std::string::npos) {
    throw SimError("invalid-record", "entity '" + e + "'");
  }
  if (r.detail.find_first_of("\n\r") != std::string::npos) {
    throw SimError("invalid-record", "detail contains a line break");
  }
}

}  // namespace

std::string_view to_string(TraceEvent e) noexcept { return kEventNames[static_cast<std::size_t>(e)]; }

std::optional<TraceEvent> parse_trace_event(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<TraceEvent>(i);
  }
  return std::nullopt;
}

void serialize_trace(std::span<const TraceRecord> records, std::ostream& out) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].t < records[i - 1].t) {
      throw SimError("unsorted-trace", "record " + std::to_string(i));
    }
  }
  std::string line;
  for (const TraceRecord& r : records) {
    check_record(r);
    line.clear();
    line += format_time(r.t);
    line += ' ';
    line += r.entity.str();
    line += ' ';
    line += to_string(r.event);
    line += ' ';
    line += r.detail;
    line += '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

std::string serialize_trace(std::span<const TraceRecord> records) {
  std::ostringstream out;
  serialize_trace(records, out);
  return std::move(out).str();
}

Trace deserialize_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw SimError("malformed-trace", "line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = line;
    const auto s1 = view.find(' ');
    const auto s2 = s1 == std::string_view::npos ? s1 : view.find(' ', s1 + 1);
    const auto s3 = s2 == std::string_view::npos ? s2 : view.find(' ', s2 + 1);
    if (s3 == std::string_view::npos) fail("expected 't entity event detail'");
    auto t = parse_time(view.substr(0, s1));
    if (!t) fail("bad time");
    auto event = parse_trace_event(view.substr(s2 + 1, s3 - s2 - 1));
    if (!event) fail("bad event");
    TraceRecord r;
    r.t = *t;
    r.event = *event;
    r.entity = EntityId{std::string(view.substr(s1 + 1, s2 - s1 - 1))};
    if (r.entity.empty()) fail("empty entity");
    r.detail = std::string(view.substr(s3 + 1));
    if (!trace.empty() && r.t < trace.back().t) fail("time goes backwards");
    trace.push_back(std::move(r));
  }
  return trace;
}

Trace deserialize_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return deserialize_trace(in);
}

std::string_view Labels::get(std::string_view key) const {
  auto it = values.find(key);
  return it == values.end() ? std::string_view{} : std::string_view{it->second};
}

Labels parse_labels(std::string_view detail) {
  Labels out;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= detail.size()) {
    auto end = detail.find(' ', pos);
    if (end == std::string_view::npos) end = detail.size();
    const std::string_view token = detail.substr(pos, end - pos);
    if (first) {
      out.label = std::string(token);
      first = false;
    } else if (!token.empty()) {
      const auto eq = token.find('=');
      if (eq == std::string_view::npos) {
        out.values.emplace(std::string(token), std::string());
      } else {
        out.values.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
      }
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace d2d
