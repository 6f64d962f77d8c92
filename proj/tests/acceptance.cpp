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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "d2d/cli/commands.hpp"
#include "d2d/core/message.hpp"
#include "d2d/eval/baselines.hpp"
#include "d2d/eval/conformance.hpp"
#include "d2d/eval/invariants.hpp"
#include "d2d/eval/metrics.hpp"
#include "d2d/eval/simulation.hpp"

namespace {

using namespace d2d;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string scenario(const std::string& name) {
  return std::string(D2D_SCENARIO_DIR) + "/" + name + ".json";
}

eval::Scenario load(const std::string& name) { return eval::load_scenario_file(scenario(name)); }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool epc_class(const EntityId& id) {
  const EntityClass c = classify(id);
  return c == EntityClass::Mme || c == EntityClass::Hss || c == EntityClass::Pgw;
}

Outcome call_flow_conformance() {
  const auto start = Clock::now();
  const auto vectors = eval::load_vectors(D2D_CONFORMANCE_DIR);
  std::set<std::string> passed;
  std::string first_failure;
  for (const auto& v : vectors) {
    const auto r = eval::run_vector(v);
    if (r.passed) {
      passed.insert(v.name);
    } else if (first_failure.empty()) {
      first_failure = fmt::format("{} step {}: expected '{}' observed '{}'", v.name, r.divergence,
                                  r.expected, r.observed);
    }
  }
  const double elapsed = seconds_since(start);
  const bool required = passed.contains("attach_discovery") &&
                        passed.contains("comm_establishment");
  const bool ok = required && first_failure.empty() && elapsed < 1.0;
  return {ok, fmt::format("{}/{} vectors match, {:.3f} s{}", passed.size(), vectors.size(),
                          elapsed, first_failure.empty() ? "" : "; " + first_failure)};
}

Outcome epc_offload() {
  const auto start = Clock::now();
  const Trace t = eval::simulate(load("offload_1000"));
  const double elapsed = seconds_since(start);
  std::uint64_t at_epc = 0;
  std::set<std::string> sent, delivered;
  bool d2d = false;
  for (const auto& r : t) {
    if (r.event == TraceEvent::StateChange && r.detail.starts_with("mode ")) {
      d2d = r.detail.ends_with("path=d2d");
    }
    if (r.event != TraceEvent::Send && r.event != TraceEvent::Recv && r.event != TraceEvent::Drop) {
      continue;
    }
    const auto wire = r.detail.substr(r.event == TraceEvent::Drop ? r.detail.find(' ') + 1 : 0);
    auto w = parse_wire(wire);
    if (!w || w->kind != MessageKind::DataPacket) continue;
    if (epc_class(r.entity)) ++at_epc;
    if (r.event == TraceEvent::Send && r.entity == EntityId{"ue1"}) sent.insert(w->corr.str());
    if (r.event == TraceEvent::Recv && r.entity == EntityId{"ue2"}) delivered.insert(w->corr.str());
  }
  const bool ok = d2d && sent.size() == 1000 && delivered == sent && at_epc == 0 && elapsed < 1.0;
  return {ok, fmt::format("D2D session, {} packets sent, {} delivered, {} DataPacket records at "
                          "MME/HSS/PGW, {:.3f} s",
                          sent.size(), delivered.size(), at_epc, elapsed)};
}

Outcome sso_reduction() {
  const Trace cached = eval::simulate(load("sso_k5"));
  const Trace uncached = eval::simulate(load("sso_k5_per_request"));
  const auto sessions = eval::events_from_trace(cached).discovery_requests;
  const auto hybrid = eval::count_mme_authz_exchanges(cached);
  const auto per_request = eval::count_mme_authz_exchanges(uncached);
  const auto model = eval::baseline_signaling_cost(eval::ModelId::PerRequest,
                                                   eval::events_from_trace(cached));
  const bool ok = sessions == 5 && hybrid == 1 && per_request == 5 &&
                  model.mme_authz_exchanges == per_request;
  return {ok, fmt::format("K={} sessions: HYBRID {} MME authorization exchange(s), per-request {} "
                          "(comparator model {})",
                          sessions, hybrid, per_request, model.mme_authz_exchanges)};
}

Outcome ip_constancy_across_handover() {
  const auto start = Clock::now();
  const eval::Scenario s = load("handover");
  const Trace t = eval::simulate(s);
  const double elapsed = seconds_since(start);
  std::map<std::string, std::set<std::string>> ips;  // UE -> IP tokens in any label
  std::map<std::string, int> received;
  std::set<std::string> sent;
  int handovers = 0;
  for (const auto& r : t) {
    if (r.event == TraceEvent::StateChange) {
      const Labels l = parse_labels(r.detail);
      if (l.label == "handover") ++handovers;
      if (l.label == "bearer") ips[r.entity.str()].insert(std::string(l.get("ip")));
      if (l.label == "pdn" || l.label == "bearer-active") {
        ips[std::string(l.get("ue"))].insert(std::string(l.get("ip")));
      }
      continue;
    }
    auto w = parse_wire(r.detail);
    if (!w || w->kind != MessageKind::DataPacket) continue;
    if (r.event == TraceEvent::Send && r.entity == EntityId{"ue1"}) sent.insert(w->corr.str());
    if (r.event == TraceEvent::Recv && r.entity == EntityId{"ue2"}) ++received[w->corr.str()];
  }
  bool one_ip = ips.size() == 2;
  for (const auto& [ue, set] : ips) one_ip = one_ip && set.size() == 1;
  bool exactly_once = !sent.empty() && received.size() == sent.size();
  for (const auto& [corr, n] : received) exactly_once = exactly_once && n == 1 && sent.contains(corr);
  const auto violations = eval::check_invariants(t, s.links);
  const bool ok = handovers == 1 && one_ip && exactly_once && violations.empty() && elapsed < 2.0;
  return {ok, fmt::format("{} handover(s), IP tokens per UE: ue1={} ue2={}, {}/{} packets "
                          "delivered exactly once, {} violations, {:.3f} s",
                          handovers, ips["ue1"].size(), ips["ue2"].size(), received.size(),
                          sent.size(), violations.size(), elapsed)};
}

Outcome feature_table() {
  // Independent transcription of the expected feature matrix.
  const std::array<std::array<const char*, 5>, 4> expected = {{
      {"EPC-based discovery", "No", "MME", "No", "No"},
      {"EPC-level discovery for offloading", "No", "PGW, SGW, eNB", "No", "No"},
      {"EPC-level discovery for offloading", "Yes", "SGW, PGW, MME, eNB", "Yes", "No"},
      {"Direct discovery", "No", "ProSe, HSS, MME", "Yes", "No"},
  }};
  const auto m = eval::feature_matrix();
  int matched = 0;
  std::string first_diff;
  for (std::size_t r = 0; r < 4 && r < m.size(); ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      if (m[r].cells[c] == expected[r][c]) {
        ++matched;
      } else if (first_diff.empty()) {
        first_diff = fmt::format("; row {} col {}: '{}'", r + 1, c + 1, m[r].cells[c]);
      }
    }
  }
  return {matched == 20, fmt::format("{}/20 cells match{}", matched, first_diff)};
}

Outcome determinism() {
  const auto start = Clock::now();
  eval::Scenario s = load("determinism_100");
  const std::string first = serialize_trace(eval::simulate(s));
  int identical = 1;
  for (int i = 1; i < 10; ++i) identical += serialize_trace(eval::simulate(s)) == first;
  s.seed += 1;
  const bool differs = serialize_trace(eval::simulate(s)) != first;
  const double elapsed = seconds_since(start);
  const bool ok = s.ues.size() == 100 && s.duration == std::chrono::seconds(60) &&
                  identical == 10 && differs && elapsed < 30.0;
  return {ok, fmt::format("{} UEs, {} s: {}/10 identical traces ({} bytes), other seed differs: "
                          "{}, {:.3f} s",
                          s.ues.size(), s.duration.count() / 1000000, identical, first.size(),
                          differs ? "yes" : "no", elapsed)};
}

Outcome invariant_suite() {
  std::vector<std::string> problems;
  for (const char* name : {"nominal", "handover", "congestion", "offload_1000", "unauthorized"}) {
    const eval::Scenario s = load(name);
    if (!eval::check_invariants(eval::simulate(s), s.links).empty()) {
      problems.push_back(std::string(name) + " not clean");
    }
  }
  const std::vector<std::pair<const char*, const char*>> faults = {
      {"fault_ignore_temp_expiry", "temp-liveness"},
      {"fault_double_grant_slot", "slot-exclusivity"},
      {"fault_reuse_radio_bearer", "rb-exclusivity"},
      {"fault_skip_l2_install", "l2-mme-bijection"},
      {"fault_skip_authz_check", "authz-precedes-accept"},
  };
  int caught = 0;
  for (const auto& [name, invariant] : faults) {
    cli::RunConfig c;
    c.scenario = scenario(name);
    c.out_dir = std::filesystem::temp_directory_path() / "d2dsim_acceptance" / name;
    c.trace = false;
    std::ostringstream out, err;
    const int code = cli::cmd_run(c, out, err);
    if (code == cli::kExitViolation && err.str().find(invariant) != std::string::npos) {
      ++caught;
    } else {
      problems.push_back(fmt::format("{} exit {}", name, code));
    }
  }
  std::string detail = fmt::format("{}/{} injected faults caught with exit 3, healthy runs clean",
                                   caught, faults.size());
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

Outcome performance() {
  const eval::Scenario s = load("perf_1000");
  const auto start = Clock::now();
  eval::Simulation sim(s);
  const Trace t = sim.run();
  const double elapsed = seconds_since(start);
  const std::uint64_t events = sim.engine().executed();
  int d2d_sessions = 0;
  for (const auto& r : t) {
    if (r.event == TraceEvent::StateChange && r.detail.starts_with("mode ") &&
        r.detail.ends_with("path=d2d")) {
      ++d2d_sessions;
    }
  }
  const bool ok = s.ues.size() == 1000 && d2d_sessions == 500 && events >= 900000 &&
                  elapsed < 10.0;
  return {ok, fmt::format("{} UEs, {} D2D sessions, {} events in {:.3f} s", s.ues.size(),
                          d2d_sessions, events, elapsed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"call-flow conformance", call_flow_conformance},
      {"EPC offload", epc_offload},
      {"SSO message reduction", sso_reduction},
      {"IP constancy across handover", ip_constancy_across_handover},
      {"feature table reproduction", feature_table},
      {"determinism", determinism},
      {"invariant suite", invariant_suite},
      {"desk-scale performance", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
