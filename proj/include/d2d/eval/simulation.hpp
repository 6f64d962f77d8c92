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
#include <memory>
#include <optional>
#include <vector>

#include "d2d/enb/enb.hpp"
#include "d2d/epc/hss.hpp"
#include "d2d/epc/mme.hpp"
#include "d2d/epc/pgw.hpp"
#include "d2d/epc/prose_server.hpp"
#include "d2d/eval/scenario.hpp"
#include "d2d/sim/engine.hpp"
#include "d2d/sim/network.hpp"
#include "d2d/ue/ue.hpp"

namespace d2d::eval {

// One simulation instance built from a scenario: engine, transport, EPC
// entities, cells and UEs, with the scripted actions scheduled.
class Simulation {
 public:
  explicit Simulation(const Scenario& scenario);

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // Runs to the scenario duration (or `until`) and returns the trace
  // produced by this call.
  Trace run();
  Trace run_until(SimTime until);

  sim::Engine& engine() noexcept { return engine_; }
  sim::Network& network() noexcept { return network_; }
  const epc::Hss& hss() const noexcept { return *hss_; }
  const epc::Mme& mme() const noexcept { return *mme_; }
  const epc::Pgw& pgw() const noexcept { return *pgw_; }
  const enb::Enb& enb(const EntityId& id) const { return *enbs_.at(id); }
  const ue::Ue& ue(const EntityId& id) const { return *ues_.at(id); }
  ue::Ue& ue(const EntityId& id) { return *ues_.at(id); }

 private:
  void schedule(const ActionDef& action, SimTime at);

  Scenario scenario_;
  sim::Engine engine_;
  sim::Network network_;
  std::unique_ptr<epc::Hss> hss_;
  std::unique_ptr<epc::Mme> mme_;
  std::unique_ptr<epc::Pgw> pgw_;
  std::unique_ptr<epc::ProseServer> prose_;
  std::map<EntityId, std::unique_ptr<enb::Enb>> enbs_;
  std::map<EntityId, std::unique_ptr<ue::Ue>> ues_;
};

// Convenience: build, run to the scenario duration, return the trace.
Trace simulate(const Scenario& scenario);

}  // namespace d2d::eval
