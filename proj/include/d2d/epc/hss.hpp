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
#include <vector>

#include "d2d/core/profiles.hpp"
#include "d2d/sim/network.hpp"

namespace d2d::epc {

// Subscriber database. IMSI and permanent D2D id are kept in a bijection.
class Hss : public sim::Agent {
 public:
  explicit Hss(sim::Network& net, EntityId id = EntityId{"hss"});

  const EntityId& id() const noexcept override { return id_; }

  // Throws SimError("duplicate-imsi") or SimError("duplicate-d2d-id").
  void add_subscriber(SubscriberProfile profile);

  // Profile for an Update Location. Without the D2D check the D2D fields are
  // left empty. Throws SimError("unknown-subscriber").
  SubscriberProfile update_location(const Imsi& imsi, bool d2d_check) const;

  const SubscriberProfile* find(const Imsi& imsi) const;
  const SubscriberProfile* find(const D2DId& d2d_id) const;
  std::size_t size() const noexcept { return by_imsi_.size(); }
  std::size_t d2d_ids() const noexcept { return by_d2d_.size(); }

  void on_message(const Message& msg) override;

 private:
  EntityId id_;
  sim::Network& net_;
  std::map<Imsi, SubscriberProfile> by_imsi_;
  std::map<D2DId, Imsi> by_d2d_;
};

}  // namespace d2d::epc
