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

#include <span>
#include <vector>

#include "d2d/core/time.hpp"

namespace d2d::sim {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b) noexcept;

// Disc proximity model. Throws SimError("invalid-radius") unless radius > 0.
bool in_d2d_range(const Position& a, const Position& b, double radius);

struct Waypoint {
  SimTime at{0};
  Position pos;
};

// Piecewise-linear interpolation over waypoints sorted by time; clamps to the
// first/last waypoint outside the scripted interval.
Position position_at(std::span<const Waypoint> path, SimTime t);

}  // namespace d2d::sim
