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

#include <gtest/gtest.h>

#include "d2d/core/error.hpp"
#include "d2d/eval/scenario.hpp"
#include "support.hpp"

namespace d2d::eval {
namespace {

using namespace std::chrono_literals;

constexpr const char* kMinimal = R"({
  "version": 1, "duration_s": 5,
  "subscribers": [{"imsi": "001010000000001"}, {"imsi": "001010000000002"}],
  "cells": [{"id": "enb1", "position": [0, 0]}],
  "ues": [{"id": "ue1", "imsi": "001010000000001", "cell": "enb1", "position": [0, 0]},
          {"id": "ue2", "imsi": "001010000000002", "cell": "enb1", "position": [10, 0]}],
  "actions": [{"at_s": 0, "ue": "ue1", "do": "power_on"}]
})";

std::string cause_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const SimError& e) {
    return e.cause() + "|" + e.what();
  }
  return "ok";
}

std::string with(std::string_view from, std::string_view to) {
  std::string s = kMinimal;
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

TEST(Scenario, MinimalDocumentGetsDefaults) {
  const Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.seed, 1u);
  EXPECT_EQ(s.duration, 5s);
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_DOUBLE_EQ(s.cells[0].d2d_radius_m, 200.0);
  EXPECT_EQ(s.cells[0].config.pool_slots, 16);
  EXPECT_EQ(s.cells[0].config.pool_period, 320ms);
  EXPECT_EQ(s.timers.authz_validity, 3600s);
  EXPECT_EQ(s.timers.pairing_window, 500ms);
  EXPECT_EQ(s.links.ue_enb, 5ms);
  EXPECT_EQ(s.subscribers[0].d2d_id, D2DId{"d2d-1"});
  EXPECT_FALSE(s.faults.any());
}

TEST(Scenario, NamedErrors) {
  EXPECT_EQ(cause_of("{").substr(0, 16), "invalid-document");
  EXPECT_NE(cause_of(with("\"imsi\": \"001010000000002\"}]", "\"imsi\": \"001010000000001\"}]"))
                .find("duplicate-imsi"),
            std::string::npos);
  EXPECT_NE(cause_of(with("\"ue\": \"ue1\"", "\"ue\": \"ue9\"")).find("unknown-ue"),
            std::string::npos);
  EXPECT_NE(cause_of(with("\"cell\": \"enb1\", \"position\": [10",
                          "\"cell\": \"enb7\", \"position\": [10"))
                .find("unknown-cell"),
            std::string::npos);
  EXPECT_NE(cause_of(with("\"duration_s\": 5", "\"duration_s\": -1")).find("invalid-duration"),
            std::string::npos);
  EXPECT_NE(cause_of(with("\"id\": \"ue2\"", "\"id\": \"ue1\"")).find("duplicate-id"),
            std::string::npos);
  EXPECT_NE(cause_of(with("\"version\": 1,", "\"version\": 1, \"faults\": [\"gremlins\"],"))
                .find("unknown-fault"),
            std::string::npos);
}

TEST(Scenario, DiagnosticNamesTheField) {
  const std::string bad = cause_of(with("\"position\": [0, 0]}]", "\"position\": [0]}]"));
  EXPECT_NE(bad.find("invalid-field"), std::string::npos) << bad;
  EXPECT_NE(bad.find("cells[0].position"), std::string::npos) << bad;
  const std::string extra = cause_of(with("\"version\": 1,", "\"version\": 1, \"colour\": 3,"));
  EXPECT_NE(extra.find("colour"), std::string::npos) << extra;
}

TEST(Scenario, ActionsParsed) {
  const Scenario s = testing::load("nominal");
  ASSERT_EQ(s.actions.size(), 7u);
  EXPECT_EQ(s.actions[2].kind, ActionKind::StartDiscovery);
  EXPECT_EQ(s.actions[2].discovery.app, D2DAppId{"app1"});
  EXPECT_EQ(s.actions[4].peer, EntityId{"ue2"});
  EXPECT_EQ(s.actions[6].packets, 10u);
  EXPECT_EQ(s.actions[6].interval, 10ms);
}

TEST(Scenario, WaypointsAndOptions) {
  const Scenario h = testing::load("handover");
  ASSERT_EQ(h.ues[1].waypoints.size(), 2u);
  EXPECT_EQ(h.ues[1].waypoints[1].at, 23s);
  EXPECT_EQ(testing::load("prose_discovery").options.discovery, DiscoveryVia::ProseServer);
  EXPECT_EQ(testing::load("separate_push").options.authz_push, epc::AuthzPush::Separate);
  EXPECT_EQ(testing::load("sso_k5_per_request").timers.authz_validity, 0s);
  EXPECT_TRUE(testing::load("fault_skip_l2_install").faults.skip_l2_install);
}

TEST(Scenario, UnreadableFile) {
  try {
    load_scenario_file("/nonexistent/x.json");
    FAIL();
  } catch (const SimError& e) {
    EXPECT_EQ(e.cause(), "unreadable-scenario");
  }
}

TEST(Scenario, EveryBundledScenarioLoads) {
  for (const char* name :
       {"nominal", "offload_1000", "handover", "unauthorized", "sso_k5", "sso_k5_per_request",
        "congestion", "prose_discovery", "separate_push", "fault_ignore_temp_expiry",
        "fault_double_grant_slot", "fault_reuse_radio_bearer", "fault_skip_l2_install",
        "fault_skip_authz_check", "fault_route_d2d_via_pgw", "fault_new_ip_for_d2d",
        "determinism_100", "perf_1000"}) {
    EXPECT_NO_THROW(testing::load(name)) << name;
  }
}

}  // namespace
}  // namespace d2d::eval
