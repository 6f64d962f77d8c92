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
#include "d2d/eval/conformance.hpp"

namespace d2d::eval {
namespace {

using namespace std::chrono_literals;

const std::filesystem::path kDir = D2D_CONFORMANCE_DIR;

TEST(Vector, Parses) {
  const auto v = parse_vector(
      "# header\nscenario: x.json\nfrom: D2DCommReq\n\n"
      "D2DCommReq ue->enb   # request\nAirAnnounce ue->*\n",
      "t");
  EXPECT_EQ(v.scenario, "x.json");
  EXPECT_EQ(v.from, MessageKind::D2DCommReq);
  ASSERT_EQ(v.steps.size(), 2u);
  EXPECT_EQ(v.steps[0].key(), "D2DCommReq ue->enb");
  EXPECT_EQ(v.steps[0].comment, "request");
  EXPECT_EQ(v.steps[1].dst, "*");
}

TEST(Vector, RejectsMalformed) {
  EXPECT_THROW(parse_vector("from: D2DCommReq\nD2DCommReq ue->enb\n"), SimError);
  EXPECT_THROW(parse_vector("scenario: x\nD2DCommReq ue->enb\n"), SimError);
  EXPECT_THROW(parse_vector("scenario: x\nfrom: Nope\nD2DCommReq ue->enb\n"), SimError);
  EXPECT_THROW(parse_vector("scenario: x\nfrom: D2DCommReq\nD2DCommReq ue enb\n"), SimError);
  EXPECT_THROW(parse_vector("scenario: x\nfrom: D2DCommReq\n"), SimError);
}

TEST(Vector, MissingDirectory) {
  try {
    load_vectors("/nonexistent");
    FAIL();
  } catch (const SimError& e) {
    EXPECT_EQ(e.cause(), "missing-vectors");
  }
}

TEST(Conformance, BundledVectorsMatch) {
  const auto vectors = load_vectors(kDir);
  ASSERT_EQ(vectors.size(), 3u);
  for (const auto& v : vectors) {
    const auto r = run_vector(v);
    EXPECT_TRUE(r.passed) << v.name << " step " << r.divergence << ": expected " << r.expected
                          << " observed " << r.observed;
  }
}

TEST(Conformance, EstablishmentHasTwelveMessages) {
  const auto v = load_vector_file(kDir / "comm_establishment.vec");
  EXPECT_EQ(v.steps.size(), 12u);
  EXPECT_EQ(load_vector_file(kDir / "attach_discovery.vec").steps.size(), 10u);
}

TEST(Conformance, ZeroPairingWindowDiverges) {
  const auto v = load_vector_file(kDir / "comm_establishment.vec");
  ScenarioOverrides o;
  o.pairing_window = 0ms;
  const auto r = run_vector(v, o);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.divergence, 2u);
  EXPECT_EQ(r.expected, "D2DBearerSetupReq enb->mme");
  EXPECT_EQ(r.observed, "D2DCommReject enb->ue");
}

TEST(Conformance, ShortTraceReportsEnd) {
  const auto v = load_vector_file(kDir / "attach_discovery.vec");
  Scenario s = load_scenario_file(v.scenario);
  s.actions.resize(1);  // never starts discovery
  const auto r = check_vector(v, s);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.divergence, 7u);
  EXPECT_EQ(r.observed, "<end>");
}

}  // namespace
}  // namespace d2d::eval
