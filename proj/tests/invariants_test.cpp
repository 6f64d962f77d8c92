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

#include "d2d/eval/invariants.hpp"
#include "d2d/eval/simulation.hpp"
#include "support.hpp"

namespace d2d::eval {
namespace {

using namespace std::chrono_literals;

std::set<std::string> names(const std::vector<Violation>& v) {
  std::set<std::string> out;
  for (const auto& x : v) out.insert(x.invariant);
  return out;
}

std::vector<Violation> check(const std::string& scenario) {
  const Scenario s = testing::load(scenario);
  return check_invariants(simulate(s), s.links);
}

TEST(Invariants, HealthyScenariosAreClean) {
  for (const char* name : {"nominal", "offload_1000", "handover", "unauthorized", "sso_k5",
                           "sso_k5_per_request", "congestion", "prose_discovery",
                           "separate_push", "determinism_100"}) {
    const auto v = check(name);
    EXPECT_TRUE(v.empty()) << name << ": " << (v.empty() ? "" : format_violation(v.front()));
  }
}

TEST(Invariants, CleanUnderJitter) {
  Scenario s = testing::load("nominal");
  s.links.jitter = 3ms;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    s.seed = seed;
    EXPECT_TRUE(check_invariants(simulate(s), s.links).empty()) << seed;
  }
}

struct FaultCase {
  const char* scenario;
  const char* invariant;
};

class InjectedFault : public ::testing::TestWithParam<FaultCase> {};

TEST_P(InjectedFault, CaughtByItsInvariant) {
  const auto v = check(GetParam().scenario);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(names(v).contains(GetParam().invariant)) << format_violation(v.front());
}

INSTANTIATE_TEST_SUITE_P(
    Faults, InjectedFault,
    ::testing::Values(FaultCase{"fault_ignore_temp_expiry", "temp-liveness"},
                      FaultCase{"fault_double_grant_slot", "slot-exclusivity"},
                      FaultCase{"fault_reuse_radio_bearer", "rb-exclusivity"},
                      FaultCase{"fault_skip_l2_install", "l2-mme-bijection"},
                      FaultCase{"fault_skip_authz_check", "authz-precedes-accept"},
                      FaultCase{"fault_route_d2d_via_pgw", "epc-offload"},
                      FaultCase{"fault_new_ip_for_d2d", "ip-constancy"}),
    [](const auto& info) { return std::string(info.param.scenario).substr(6); });

TraceRecord rec(double t, TraceEvent e, const char* entity, std::string detail) {
  return TraceRecord{from_seconds(t), e, EntityId{entity}, std::move(detail)};
}

constexpr auto kSend = TraceEvent::Send;
constexpr auto kRecv = TraceEvent::Recv;
constexpr auto kState = TraceEvent::StateChange;

TEST(Invariants, CausalityNeedsMatchingSendAndDelay) {
  const sim::LinkProfile links;
  Trace t{rec(1.000, kSend, "ue1", "RbSetupAck(ue1->enb1,enb1.3)"),
          rec(1.005, kRecv, "enb1", "RbSetupAck(ue1->enb1,enb1.3)")};
  EXPECT_TRUE(check_invariants(t, links).empty());
  t[1].t = from_seconds(1.004);
  EXPECT_EQ(names(check_invariants(t, links)), std::set<std::string>{"causality"});
  Trace orphan{rec(1.0, kRecv, "enb1", "RbSetupAck(ue1->enb1,enb1.3)")};
  EXPECT_EQ(names(check_invariants(orphan, links)), std::set<std::string>{"causality"});
}

TEST(Invariants, TimeOrder) {
  Trace t{rec(2.0, kState, "ue1", "phase from=off to=attaching"),
          rec(1.0, kState, "ue1", "phase from=attaching to=attached")};
  EXPECT_EQ(names(check_invariants(t, {})), std::set<std::string>{"time-order"});
}

TEST(Invariants, DuplicateContext) {
  Trace t{rec(1.0, kState, "mme", "context-create ue=ue1 imsi=001010000000001"),
          rec(2.0, kState, "mme", "context-create ue=ue1 imsi=001010000000001")};
  EXPECT_EQ(names(check_invariants(t, {})), std::set<std::string>{"attach-idempotence"});
}

TEST(Invariants, DataAtMmeIsOffloadViolation) {
  Trace t{rec(1.0, kSend, "enb1", "DataPacket(enb1->mme,ue1.f1#1) digest=00000000"),
          rec(1.01, kRecv, "mme", "DataPacket(enb1->mme,ue1.f1#1) digest=00000000")};
  EXPECT_TRUE(names(check_invariants(t, {})).contains("epc-offload"));
}

TEST(Invariants, LostAndReorderedPackets) {
  Trace t{rec(1.000, kSend, "ue1", "DataPacket(ue1->enb1,ue1.f1#1) digest=1"),
          rec(1.001, kSend, "ue1", "DataPacket(ue1->enb1,ue1.f1#2) digest=2"),
          rec(1.005, kRecv, "enb1", "DataPacket(ue1->enb1,ue1.f1#1) digest=1"),
          rec(1.006, kRecv, "enb1", "DataPacket(ue1->enb1,ue1.f1#2) digest=2"),
          rec(1.006, kSend, "enb1", "DataPacket(enb1->ue2,ue1.f1#2) digest=2"),
          rec(1.011, kRecv, "ue2", "DataPacket(enb1->ue2,ue1.f1#2) digest=2"),
          rec(1.020, kSend, "enb1", "DataPacket(enb1->ue2,ue1.f1#1) digest=1"),
          rec(1.025, kRecv, "ue2", "DataPacket(enb1->ue2,ue1.f1#1) digest=1"),
          rec(5.0, kState, "ue1", "phase from=d2d_active to=epc_active")};
  const auto v = check_invariants(t, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].invariant, "exactly-once");
  t.erase(t.begin() + 6, t.begin() + 8);  // #1 never delivered
  const auto lost = check_invariants(t, {});
  ASSERT_EQ(lost.size(), 1u);
  EXPECT_NE(lost[0].detail.find("never delivered"), std::string::npos);
}

TEST(Invariants, PacketsInFlightAtEndAreNotLost) {
  Trace t{rec(1.000, kSend, "ue1", "DataPacket(ue1->enb1,ue1.f1#1) digest=1")};
  EXPECT_TRUE(check_invariants(t, {}).empty());
}

TEST(Invariants, AuthorizationWindow) {
  Trace t{rec(1.0, kState, "enb1", "authz-store d2d=d2d-1 ue=ue1 services=app1 until=2.000000"),
          rec(1.5, kState, "enb1",
              "temp-issue temp=enb1-t1 ue=ue1 d2d=d2d-1 app=app1 corr=ue1.2 until=9.000000")};
  EXPECT_TRUE(check_invariants(t, {}).empty());
  t[1].t = from_seconds(2.0);
  EXPECT_EQ(names(check_invariants(t, {})), std::set<std::string>{"authz-precedes-accept"});
  t[1].t = from_seconds(1.5);
  t[1].detail = "temp-issue temp=enb1-t1 ue=ue1 d2d=d2d-1 app=app2 corr=ue1.2 until=9.000000";
  EXPECT_EQ(names(check_invariants(t, {})), std::set<std::string>{"authz-precedes-accept"});
}

}  // namespace
}  // namespace d2d::eval
