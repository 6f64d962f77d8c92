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
#include "d2d/eval/baselines.hpp"
#include "d2d/eval/simulation.hpp"
#include "support.hpp"

namespace d2d::eval {
namespace {

using namespace std::chrono_literals;

const char* const kScenarios[] = {"nominal",       "offload_1000",  "handover",
                                  "unauthorized",  "sso_k5",        "congestion",
                                  "prose_discovery", "separate_push", "determinism_100"};

TEST(ModelId, ParsesShortAndLongNames) {
  EXPECT_EQ(parse_model_id("S1"), ModelId::S1);
  EXPECT_EQ(parse_model_id("s2_gw_filter"), ModelId::S2);
  EXPECT_EQ(parse_model_id("S3_gw_prose"), ModelId::S3);
  EXPECT_EQ(parse_model_id("S4_prose_server"), ModelId::S4);
  EXPECT_EQ(parse_model_id("hybrid"), ModelId::Hybrid);
  EXPECT_EQ(parse_model_id("PER_REQUEST"), ModelId::PerRequest);
  EXPECT_FALSE(parse_model_id("S5"));
  for (auto m : kAllModels) EXPECT_EQ(parse_model_id(to_string(m)), m);
}

TEST(CostVector, ColumnsAndTotal) {
  CostVector c;
  c.at("mme") = 4;
  c.at("ue") = 1;
  EXPECT_EQ(c.total(), 5u);
  EXPECT_THROW(c.at("sgw"), SimError);
}

// The analytic HYBRID model must reproduce the simulator's counts exactly.
TEST(Baselines, HybridMatchesSimulatedTrace) {
  for (const char* name : kScenarios) {
    const Trace t = simulate(testing::load(name));
    EXPECT_EQ(baseline_signaling_cost(ModelId::Hybrid, events_from_trace(t)), trace_cost(t))
        << name;
  }
}

// The per-request comparator is HYBRID without the authorization cache; a
// run with zero validity exercises exactly that protocol.
TEST(Baselines, PerRequestMatchesZeroValidityRun) {
  for (const char* name : kScenarios) {
    Scenario s = testing::load(name);
    if (s.options.discovery == DiscoveryVia::ProseServer) continue;
    const WorkloadEvents cached = events_from_trace(simulate(s));
    s.timers.authz_validity = 0s;
    const Trace uncached = simulate(s);
    EXPECT_EQ(baseline_signaling_cost(ModelId::PerRequest, cached), trace_cost(uncached)) << name;
  }
}

TEST(Baselines, SsoSavesAuthorizationExchanges) {
  const WorkloadEvents e = events_from_trace(simulate(testing::load("sso_k5")));
  EXPECT_EQ(e.discovery_requests, 5u);
  EXPECT_EQ(baseline_signaling_cost(ModelId::Hybrid, e).mme_authz_exchanges, 1u);
  EXPECT_EQ(baseline_signaling_cost(ModelId::PerRequest, e).mme_authz_exchanges, 5u);
}

TEST(Baselines, ThreeSessionsOneExchange) {
  Scenario s = testing::load("sso_k5");
  s.actions.resize(7);  // power on and three start/stop rounds
  const WorkloadEvents e = events_from_trace(simulate(s));
  EXPECT_EQ(e.discovery_requests, 3u);
  EXPECT_EQ(baseline_signaling_cost(ModelId::Hybrid, e).mme_authz_exchanges, 1u);
  EXPECT_EQ(baseline_signaling_cost(ModelId::PerRequest, e).mme_authz_exchanges, 3u);
}

TEST(Baselines, ServerModelUsesProseNotEnbCache) {
  const WorkloadEvents e = events_from_trace(simulate(testing::load("nominal")));
  const CostVector s4 = baseline_signaling_cost(ModelId::S4, e);
  EXPECT_GT(s4.at("prose"), 0u);
  EXPECT_EQ(s4.mme_authz_exchanges, 0u);
  EXPECT_EQ(s4.authz_exchanges, e.discovery_requests);
  EXPECT_EQ(baseline_signaling_cost(ModelId::Hybrid, e).at("prose"), 0u);
}

TEST(Baselines, EventsFromNominal) {
  const WorkloadEvents e = events_from_trace(simulate(testing::load("nominal")));
  WorkloadEvents want;
  want.attaches = 2;
  want.authz_grants = 2;
  want.discovery_requests = 2;
  want.comm_requests = 2;
  want.d2d_flows = 1;
  EXPECT_EQ(e, want);
}

TEST(Baselines, EventsFromHandoverAndRejects) {
  const WorkloadEvents h = events_from_trace(simulate(testing::load("handover")));
  EXPECT_EQ(h.handovers, 1u);
  const WorkloadEvents u = events_from_trace(simulate(testing::load("unauthorized")));
  EXPECT_EQ(u.discovery_requests, 3u);
  EXPECT_EQ(u.attaches, 3u);
  EXPECT_EQ(u.authz_grants, 2u);
}

TEST(Baselines, LiteratureModelsOnFixedWorkload) {
  WorkloadEvents e;
  e.attaches = 2;
  e.discovery_requests = 2;
  e.d2d_flows = 1;
  e.handovers = 1;
  // Hand-summed from the per-model step lists.
  const CostVector s1 = baseline_signaling_cost(ModelId::S1, e);
  EXPECT_EQ(s1.per_entity, (std::array<std::uint64_t, 6>{6 + 4 + 6, 6, 14 + 4 + 8, 4, 4 + 4, 0}));
  const CostVector s2 = baseline_signaling_cost(ModelId::S2, e);
  EXPECT_EQ(s2.per_entity,
            (std::array<std::uint64_t, 6>{6 + 10 + 6, 12 + 6, 14 + 12 + 8, 4, 4 + 6 + 4, 0}));
  const CostVector s3 = baseline_signaling_cost(ModelId::S3, e);
  EXPECT_EQ(s3.per_entity,
            (std::array<std::uint64_t, 6>{6 + 4 + 4 + 4, 8 + 8 + 8, 14 + 4 + 8 + 8, 4,
                                          4 + 8 + 4 + 4, 0}));
  EXPECT_EQ(s3.mme_authz_exchanges, 2u);
  const CostVector s4 = baseline_signaling_cost(ModelId::S4, e);
  EXPECT_EQ(s4.per_entity, (std::array<std::uint64_t, 6>{6 + 4 + 6, 6, 14 + 8, 4 + 4, 4 + 4, 8}));
}

TEST(FeatureMatrix, LiteratureRowsVerbatim) {
  const auto m = feature_matrix();
  ASSERT_EQ(m.size(), 5u);
  const std::array<std::array<const char*, 5>, 4> want = {{
      {"EPC-based discovery", "No", "MME", "No", "No"},
      {"EPC-level discovery for offloading", "No", "PGW, SGW, eNB", "No", "No"},
      {"EPC-level discovery for offloading", "Yes", "SGW, PGW, MME, eNB", "Yes", "No"},
      {"Direct discovery", "No", "ProSe, HSS, MME", "Yes", "No"},
  }};
  for (std::size_t r = 0; r < 4; ++r) {
    EXPECT_EQ(m[r].solution, "Solution " + std::to_string(r + 1));
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(m[r].cells[c], want[r][c]) << r << "," << c;
  }
  EXPECT_EQ(m[4].solution, "HYBRID");
  EXPECT_EQ(m[4].cells, (std::array<std::string, 5>{"Direct discovery", "Yes", "eNB, MME, HSS",
                                                    "Yes", "Yes"}));
  EXPECT_EQ(feature_row(ModelId::S3).cells[1], "Yes");
  EXPECT_EQ(feature_row(ModelId::PerRequest).cells, m[4].cells);
}

}  // namespace
}  // namespace d2d::eval
