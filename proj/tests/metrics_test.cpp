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

#include <sstream>

#include <gtest/gtest.h>

#include "d2d/eval/metrics.hpp"
#include "d2d/eval/simulation.hpp"
#include "support.hpp"

namespace d2d::eval {
namespace {

using namespace std::chrono_literals;

// Setup delay is request-to-accept at the UE. Along the establishment
// sequence the legs are: request up (ue_enb), bearer setup to the MME and
// back (2 x enb_mme), radio bearer setup and ack (2 x ue_enb), accept down
// (ue_enb). Both UEs run in parallel, so the pair delay is one chain.
SimTime expected_setup(const sim::LinkProfile& l) { return 4 * l.ue_enb + 2 * l.enb_mme; }

TEST(Metrics, SetupDelayDefaultLinks) {
  const Scenario s = testing::load("nominal");
  const auto report = collect_metrics(simulate(s));
  ASSERT_EQ(report.setups.size(), 1u);
  EXPECT_EQ(expected_setup(s.links), 40ms);
  EXPECT_EQ(report.setups[0].delay, 40ms);
  EXPECT_EQ(report.setups[0].path, "d2d");
}

TEST(Metrics, SetupDelayFollowsLinkProfile) {
  Scenario s = testing::load("nominal");
  s.links.ue_enb = 7ms;
  s.links.enb_mme = 11ms;
  const auto report = collect_metrics(simulate(s));
  ASSERT_EQ(report.setups.size(), 1u);
  EXPECT_EQ(expected_setup(s.links), 50ms);
  EXPECT_EQ(report.setups[0].delay, 50ms);
}

TEST(Metrics, EmptyTraceIsAllZero) {
  const auto report = collect_metrics({});
  EXPECT_EQ(report, MetricsReport{});
}

TEST(Metrics, D2DRunHasNoEpcData) {
  const auto report = collect_metrics(simulate(testing::load("offload_1000")));
  EXPECT_EQ(report.epc_data_messages, 0u);
  EXPECT_EQ(report.flows.at("ue1.f1").delivered, 1000u);
}

TEST(Metrics, HandoverInterruptionRecorded) {
  const auto report = collect_metrics(simulate(testing::load("handover")));
  ASSERT_EQ(report.handover_interruptions.size(), 1u);
  EXPECT_GT(report.handover_interruptions.begin()->second, 0ms);
  const auto& f = report.flows.at("ue1.f1");
  EXPECT_EQ(f.min_hops, 2u);
  EXPECT_EQ(f.max_hops, 4u);
}

// Property: metrics depend only on the serialized trace.
TEST(Metrics, TracePure) {
  for (const char* name : {"nominal", "handover", "congestion", "sso_k5"}) {
    const Trace t = simulate(testing::load(name));
    EXPECT_EQ(collect_metrics(deserialize_trace(serialize_trace(t))), collect_metrics(t)) << name;
  }
}

TEST(Metrics, ControlCountsBalance) {
  const auto report = collect_metrics(simulate(testing::load("nominal")));
  std::uint64_t sent = 0, recv = 0;
  for (const auto& [id, c] : report.control) {
    sent += c.sent;
    recv += c.recv;
  }
  EXPECT_EQ(sent, recv);
  EXPECT_GT(sent, 0u);
}

TEST(Metrics, CsvLongForm) {
  std::ostringstream out;
  write_metrics_csv(collect_metrics(simulate(testing::load("nominal"))), out);
  const std::string csv = out.str();
  EXPECT_TRUE(csv.starts_with("metric,key,value\n"));
  EXPECT_NE(csv.find("setup_delay_ms,enb1.p1,40.000\n"), std::string::npos);
  EXPECT_NE(csv.find("epc_data_messages,,0\n"), std::string::npos);
}

}  // namespace
}  // namespace d2d::eval
