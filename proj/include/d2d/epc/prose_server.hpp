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

#include "d2d/core/profiles.hpp"
#include "d2d/sim/network.hpp"

namespace d2d::epc {

using namespace std::chrono_literals;

struct ProseConfig {
  SimTime temp_id_ttl{300s};
  int pool_slots = 16;
  SimTime pool_period{320ms};
};

// Dedicated discovery server: authorizes every discovery request against the
// HSS and issues temp-IDs itself, with no authorization cached in the RAN.
// Slots are handed out round-robin; the server keeps no per-slot state.
class ProseServer : public sim::Agent {
 public:
  ProseServer(sim::Network& net, ProseConfig config, EntityId id = EntityId{"prose"});

  const EntityId& id() const noexcept override { return id_; }
  std::uint64_t issued() const noexcept { return temps_.count(); }

  void on_message(const Message& msg) override;

 private:
  struct Pending {
    EntityId ue;
    CorrId corr;
    D2DAppId app;
    D2DId d2d;
  };

  void on_request(const Message& msg);
  void on_auth(const Message& msg);

  EntityId id_;
  sim::Network& net_;
  ProseConfig config_;
  IdCounter corr_;
  IdCounter temps_;
  std::map<CorrId, Pending> pending_;
};

}  // namespace d2d::epc
