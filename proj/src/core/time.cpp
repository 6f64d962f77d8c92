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

#include "d2d/core/time.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace d2d {

std::string format_time(SimTime t) {
  const long long us = t.count();
  const long long mag = us < 0 ? -us : us;
  return fmt::format("{}{}.{:06d}", us < 0 ? "-" : "", mag / 1000000, mag % 1000000);
}

std::optional<SimTime> parse_time(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 6 || (dot != std::string_view::npos && frac.empty())) {
    return std::nullopt;
  }
  long long seconds = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), seconds);
  if (ec != std::errc{} || p != whole.data() + whole.size()) return std::nullopt;
  long long micros = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    micros *= 10;
    if (i < frac.size()) {
      if (frac[i] < '0' || frac[i] > '9') return std::nullopt;
      micros += frac[i] - '0';
    }
  }
  const long long total = seconds * 1000000 + micros;
  return SimTime{negative ? -total : total};
}

SimTime from_seconds(double seconds) {
  return SimTime{static_cast<long long>(std::llround(seconds * 1e6))};
}

SimTime from_millis(double millis) {
  return SimTime{static_cast<long long>(std::llround(millis * 1e3))};
}

}  // namespace d2d
