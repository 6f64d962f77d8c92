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

#include "d2d/enb/tables.hpp"

#include <algorithm>

#include "d2d/core/error.hpp"

namespace d2d::enb {

void AuthorizationCache::store(AuthorizationEntry entry) {
  D2DId key = entry.d2d_id;
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

const AuthorizationEntry* AuthorizationCache::lookup(const D2DId& id, SimTime now) const {
  auto it = entries_.find(id);
  if (it == entries_.end() || !it->second.usable_at(now)) return nullptr;
  return &it->second;
}

std::vector<D2DId> AuthorizationCache::purge(SimTime now) {
  std::vector<D2DId> gone;
  std::erase_if(entries_, [&](const auto& kv) {
    if (kv.second.usable_at(now)) return false;
    gone.push_back(kv.first);
    return true;
  });
  return gone;
}

DiscoveryResourcePool::DiscoveryResourcePool(int size) {
  if (size <= 0) throw SimError("invalid-config", "pool size must be > 0");
  slots_.resize(static_cast<std::size_t>(size));
  free_ = size;
}

std::optional<int> DiscoveryResourcePool::allocate(const std::string& temp_id) {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i]) {
      slots_[i] = temp_id;
      --free_;
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

void DiscoveryResourcePool::force(int slot, const std::string& temp_id) {
  auto& s = slots_.at(static_cast<std::size_t>(slot));
  if (!s) --free_;
  s = temp_id;
}

bool DiscoveryResourcePool::release(int slot, const std::string& temp_id) {
  auto& s = slots_.at(static_cast<std::size_t>(slot));
  if (!s || *s != temp_id) return false;
  s.reset();
  ++free_;
  return true;
}

void L2RoutingTable::install(L2RouteEntry entry, bool unchecked) {
  if (!unchecked) {
    if (entry.rb_a == entry.rb_b) throw SimError("rb-conflict", entry.rb_a.str());
    if (find(entry.rb_a) != nullptr) throw SimError("rb-conflict", entry.rb_a.str());
    if (find(entry.rb_b) != nullptr) throw SimError("rb-conflict", entry.rb_b.str());
  }
  const std::uint64_t key = next_++;
  index_.emplace(entry.rb_a, key);
  if (entry.rb_b != entry.rb_a) index_.emplace(entry.rb_b, key);
  entries_.emplace(key, std::move(entry));
}

const L2RouteEntry* L2RoutingTable::find(const RadioBearerId& rb, const EntityId& from) const {
  auto [lo, hi] = index_.equal_range(rb);
  for (auto it = lo; it != hi; ++it) {
    const L2RouteEntry& e = entries_.at(it->second);
    if ((e.rb_a == rb && e.ue_a == from) || (e.rb_b == rb && e.ue_b == from)) return &e;
  }
  return nullptr;
}

const L2RouteEntry* L2RoutingTable::find(const RadioBearerId& rb) const {
  auto it = index_.find(rb);
  return it == index_.end() ? nullptr : &entries_.at(it->second);
}

std::optional<L2RouteEntry> L2RoutingTable::remove(const RadioBearerId& rb) {
  auto it = index_.find(rb);
  if (it == index_.end()) return std::nullopt;
  const std::uint64_t key = it->second;
  L2RouteEntry out = std::move(entries_.at(key));
  entries_.erase(key);
  std::erase_if(index_, [&](const auto& kv) { return kv.second == key; });
  return out;
}

PathMode mode_select(const CellState& cell, double threshold, const sim::Position& a,
                     const sim::Position& b, double radius) {
  if (!sim::in_d2d_range(a, b, radius)) return PathMode::Epc;
  return cell.load() < threshold ? PathMode::D2D : PathMode::Epc;
}

}  // namespace d2d::enb
