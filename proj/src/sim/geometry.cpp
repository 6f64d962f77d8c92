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

#include "d2d/sim/geometry.hpp"

#include <cmath>

#include "d2d/core/error.hpp"

namespace d2d::sim {

double distance(const Position& a, const Position& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool in_d2d_range(const Position& a, const Position& b, double radius) {
  if (!(radius > 0.0)) throw SimError("invalid-radius");
  return distance(a, b) <= radius;
}

Position position_at(std::span<const Waypoint> path, SimTime t) {
  if (path.empty()) return {};
  if (t <= path.front().at) return path.front().pos;
  if (t >= path.back().at) return path.back().pos;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Waypoint& b = path[i];
    if (t > b.at) continue;
    const Waypoint& a = path[i - 1];
    const double span = static_cast<double>((b.at - a.at).count());
    const double f = span > 0 ? static_cast<double>((t - a.at).count()) / span : 1.0;
    return {a.pos.x + (b.pos.x - a.pos.x) * f, a.pos.y + (b.pos.y - a.pos.y) * f};
  }
  return path.back().pos;
}

}  // namespace d2d::sim
