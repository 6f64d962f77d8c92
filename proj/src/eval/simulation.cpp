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

#include "d2d/eval/simulation.hpp"

#include "d2d/core/error.hpp"

namespace d2d::eval {

Simulation::Simulation(const Scenario& scenario)
    : scenario_(scenario), engine_(scenario.seed), network_(engine_, scenario.links) {
  const Timers& t = scenario_.timers;

  hss_ = std::make_unique<epc::Hss>(network_);
  for (const auto& s : scenario_.subscribers) hss_->add_subscriber(s);
  mme_ = std::make_unique<epc::Mme>(network_,
                                    epc::MmeConfig{t.authz_validity, scenario_.options.authz_push});
  pgw_ = std::make_unique<epc::Pgw>(network_,
                                    [this](const EntityId& ue) { return mme_->attached(ue); });
  network_.add(*hss_);
  network_.add(*mme_);
  network_.add(*pgw_);

  const bool prose = scenario_.options.discovery == DiscoveryVia::ProseServer;
  if (prose) {
    const auto& first = scenario_.cells.front().config;
    prose_ = std::make_unique<epc::ProseServer>(
        network_, epc::ProseConfig{t.temp_id_ttl, first.pool_slots, first.pool_period});
    network_.add(*prose_);
  }

  for (const auto& c : scenario_.cells) {
    enb::EnbConfig cfg = c.config;
    cfg.temp_id_ttl = t.temp_id_ttl;
    cfg.pairing_window = t.pairing_window;
    auto e = std::make_unique<enb::Enb>(network_, c.id, cfg, scenario_.faults);
    network_.add(*e);
    network_.set_position(c.id, c.position);
    network_.set_d2d_radius(c.id, c.d2d_radius_m);
    enbs_.emplace(c.id, std::move(e));
  }

  std::map<std::string, const SubscriberProfile*> by_imsi;
  for (const auto& s : scenario_.subscribers) by_imsi.emplace(s.imsi.str(), &s);
  for (const auto& u : scenario_.ues) {
    ue::UeConfig cfg{u.imsi, {}, u.d2d, u.qos, t.retry_backoff, t.max_retries, {}};
    if (auto it = by_imsi.find(u.imsi.str()); it != by_imsi.end()) cfg.d2d_id = it->second->d2d_id;
    if (prose) cfg.discovery_server = EntityId{"prose"};
    auto agent = std::make_unique<ue::Ue>(network_, u.id, std::move(cfg), scenario_.faults);
    network_.add(*agent);
    network_.set_serving_cell(u.id, u.cell);
    network_.set_position(u.id, u.position);
    if (!u.waypoints.empty()) network_.set_path(u.id, u.waypoints);
    ues_.emplace(u.id, std::move(agent));
  }
  network_.start_mobility(t.mobility_epoch);

  const auto jitter = static_cast<std::uint64_t>(scenario_.options.action_jitter.count());
  for (const auto& a : scenario_.actions) {
    schedule(a, a.at + SimTime{static_cast<SimTime::rep>(engine_.uniform(jitter))});
  }
}

void Simulation::schedule(const ActionDef& action, SimTime at) {
  ue::Ue* agent = ues_.at(action.ue).get();
  engine_.schedule(sim::ScenarioAction{[agent, action] {
                     switch (action.kind) {
                       case ActionKind::PowerOn: agent->power_on(); break;
                       case ActionKind::StartDiscovery: agent->start_discovery(action.discovery); break;
                       case ActionKind::StopDiscovery: agent->stop_discovery(); break;
                       case ActionKind::InitiateSession: agent->initiate_session(action.peer); break;
                       case ActionKind::SendFlow:
                         agent->send_flow(action.peer, action.packets, action.interval, action.size);
                         break;
                     }
                   }},
                   at);
}

Trace Simulation::run() { return run_until(scenario_.duration); }

Trace Simulation::run_until(SimTime until) { return engine_.run_until(until); }

Trace simulate(const Scenario& scenario) {
  Simulation sim(scenario);
  return sim.run();
}

}  // namespace d2d::eval
