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

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "d2d/core/profiles.hpp"
#include "d2d/sim/geometry.hpp"

namespace d2d::enb {

// Authorizations pushed by the MME, keyed by permanent D2D id. Expired
// entries are ignored by lookup and removed by purge.
class AuthorizationCache {
 public:
  // Inserts or refreshes (a refresh resets stored_at).
  void store(AuthorizationEntry entry);
  const AuthorizationEntry* lookup(const D2DId& id, SimTime now) const;
  std::vector<D2DId> purge(SimTime now);
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<D2DId, AuthorizationEntry> entries_;
};

// Periodic discovery slots; each slot is held by at most one temp-ID.
class DiscoveryResourcePool {
 public:
  // Throws SimError("invalid-config") unless size > 0.
  explicit DiscoveryResourcePool(int size);

  // Lowest free slot, or nullopt when exhausted.
  std::optional<int> allocate(const std::string& temp_id);
  // Grants `slot` regardless of its holder. Only used to inject faults.
  void force(int slot, const std::string& temp_id);
  // Frees `slot` if `temp_id` holds it; returns whether it did.
  bool release(int slot, const std::string& temp_id);

  const std::optional<std::string>& holder(int slot) const { return slots_.at(static_cast<std::size_t>(slot)); }
  int size() const noexcept { return static_cast<int>(slots_.size()); }
  int free_count() const noexcept { return free_; }

 private:
  std::vector<std::optional<std::string>> slots_;
  int free_ = 0;
};

struct L2RouteEntry {
  RadioBearerId rb_a;
  RadioBearerId rb_b;
  EntityId ue_a;
  EntityId ue_b;
  std::pair<BearerId, BearerId> d2d_bearer_ids;
};

// Layer-2 pairing of radio bearers forming one D2D flow.
class L2RoutingTable {
 public:
  // Throws SimError("rb-conflict") when rb_a == rb_b or either radio bearer
  // is already routed, unless `unchecked` (fault injection only).
  void install(L2RouteEntry entry, bool unchecked = false);

  // Entry containing `rb` on the side of `from`.
  const L2RouteEntry* find(const RadioBearerId& rb, const EntityId& from) const;
  const L2RouteEntry* find(const RadioBearerId& rb) const;
  // Removes the entry containing `rb`; returns it if there was one.
  std::optional<L2RouteEntry> remove(const RadioBearerId& rb);

  // Entries in installation order.
  const std::map<std::uint64_t, L2RouteEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::uint64_t, L2RouteEntry> entries_;
  std::unordered_multimap<RadioBearerId, std::uint64_t> index_;
  std::uint64_t next_ = 0;
};

struct CellState {
  int capacity = 256;
  int active_bearers = 0;

  double load() const noexcept {
    return capacity > 0 ? static_cast<double>(active_bearers) / capacity : 1.0;
  }
};

// D2D path iff the pair is within radio range and the cell is below the
// congestion threshold.
PathMode mode_select(const CellState& cell, double threshold, const sim::Position& a,
                     const sim::Position& b, double radius);

}  // namespace d2d::enb
