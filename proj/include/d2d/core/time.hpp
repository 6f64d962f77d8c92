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

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace d2d {

// Simulated time, microsecond resolution. Used for both instants and
// durations; the epoch is the start of the scenario.
using SimTime = std::chrono::microseconds;

// Renders `t` as seconds with six fractional digits ("12.000345").
std::string format_time(SimTime t);

// Inverse of format_time. Accepts an optional leading '-', an integer part
// and up to six fractional digits.
std::optional<SimTime> parse_time(std::string_view text);

// Converts floating seconds to SimTime, rounding to the nearest microsecond.
SimTime from_seconds(double seconds);
SimTime from_millis(double millis);

}  // namespace d2d
