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

#include <random>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "d2d/core/error.hpp"
#include "d2d/core/faults.hpp"
#include "d2d/core/ids.hpp"
#include "d2d/core/message.hpp"
#include "d2d/core/time.hpp"
#include "d2d/core/trace.hpp"

namespace d2d {
namespace {

using namespace std::chrono_literals;

TEST(Imsi, AcceptsFifteenDigitsOnly) {
  EXPECT_TRUE(Imsi::parse("001010000000001"));
  EXPECT_FALSE(Imsi::parse("00101000000000"));
  EXPECT_FALSE(Imsi::parse("0010100000000012"));
  EXPECT_FALSE(Imsi::parse("00101000000000a"));
  EXPECT_FALSE(Imsi::parse(""));
}

TEST(EntityClass, FollowsNamingConvention) {
  EXPECT_EQ(classify(EntityId{"ue12"}), EntityClass::Ue);
  EXPECT_EQ(classify(EntityId{"enb3"}), EntityClass::Enb);
  EXPECT_EQ(classify(EntityId{"mme"}), EntityClass::Mme);
  EXPECT_EQ(classify(EntityId{"hss"}), EntityClass::Hss);
  EXPECT_EQ(classify(EntityId{"pgw"}), EntityClass::Pgw);
  EXPECT_EQ(classify(EntityId{"prose"}), EntityClass::Prose);
  EXPECT_EQ(classify(kBroadcast), EntityClass::Broadcast);
  EXPECT_EQ(classify(EntityId{"router"}), EntityClass::Unknown);
}

TEST(TempId, LiveUntilExpiry) {
  TempD2DId t{"enb1-t1", EntityId{"enb1"}, 1s, 2s};
  EXPECT_TRUE(t.live_at(2999999us));
  EXPECT_FALSE(t.live_at(3s));
}

TEST(Time, FormatParseRoundTrip) {
  EXPECT_EQ(format_time(12000345us), "12.000345");
  EXPECT_EQ(format_time(0us), "0.000000");
  EXPECT_EQ(parse_time("12.000345"), SimTime{12000345});
  EXPECT_EQ(parse_time("3"), SimTime{3000000});
  EXPECT_EQ(parse_time("-0.5"), SimTime{-500000});
  EXPECT_FALSE(parse_time("1.1234567"));
  EXPECT_FALSE(parse_time("x"));
  EXPECT_EQ(from_seconds(0.0000004), SimTime{0});
  EXPECT_EQ(from_millis(2.5), SimTime{2500});
}

TEST(Faults, EnableByName) {
  FaultSet f;
  EXPECT_FALSE(f.any());
  EXPECT_TRUE(f.enable("reuse_radio_bearer"));
  EXPECT_TRUE(f.reuse_radio_bearer);
  EXPECT_TRUE(f.any());
  EXPECT_FALSE(f.enable("make_it_faster"));
}

Message attach_req() {
  Message m;
  m.kind = MessageKind::NasAttachReq;
  m.src = EntityId{"ue1"};
  m.dst = EntityId{"mme"};
  m.corr = CorrId{"ue1.1"};
  m.payload.imsi = *Imsi::parse("001010000000001");
  m.payload.d2d_flag = true;
  return m;
}

TEST(Message, ValidateRequiredFields) {
  Message m = attach_req();
  EXPECT_FALSE(validate_message(m));
  m.payload.d2d_flag.reset();
  EXPECT_EQ(validate_message(m), "d2d_flag");
  m = attach_req();
  m.dst = m.src;
  EXPECT_EQ(validate_message(m), "src=dst");
}

TEST(Message, NegativeFormNeedsOnlyCause) {
  Message m;
  m.kind = MessageKind::PdnConnectResp;
  m.src = EntityId{"pgw"};
  m.dst = EntityId{"mme"};
  m.payload.ue = EntityId{"ue1"};
  EXPECT_EQ(validate_message(m), "ip");
  m.payload.cause = "not-attached";
  EXPECT_FALSE(validate_message(m));
}

TEST(Message, QosOutOfRangeRejected) {
  Message m;
  m.kind = MessageKind::D2DBearerSetupReq;
  m.src = EntityId{"enb1"};
  m.dst = EntityId{"mme"};
  m.payload.ue = EntityId{"ue1"};
  m.payload.peer = EntityId{"ue2"};
  m.payload.enb = EntityId{"enb1"};
  m.payload.qos = 10;
  EXPECT_EQ(validate_message(m), "qos");
}

TEST(Message, KindNamesRoundTrip) {
  for (std::size_t i = 0; i < kMessageKindCount; ++i) {
    const auto k = static_cast<MessageKind>(i);
    EXPECT_EQ(parse_message_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_message_kind("Hello"));
}

TEST(Message, ReplySwapsEndpointsKeepsCorr) {
  const Message r = reply_to(attach_req(), MessageKind::NasAttachAccept);
  EXPECT_EQ(r.src, EntityId{"mme"});
  EXPECT_EQ(r.dst, EntityId{"ue1"});
  EXPECT_EQ(r.corr, CorrId{"ue1.1"});
}

TEST(Wire, FormatAndParse) {
  Message m;
  m.kind = MessageKind::D2DCommAccept;
  m.src = EntityId{"enb1"};
  m.dst = EntityId{"ue1"};
  m.corr = CorrId{"ue1.9"};
  m.payload.mode = PathMode::D2D;
  const std::string wire = format_wire(m);
  EXPECT_EQ(wire, "D2DCommAccept(enb1->ue1,ue1.9) mode=d2d");
  auto w = parse_wire(wire);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, MessageKind::D2DCommAccept);
  EXPECT_EQ(w->src, EntityId{"enb1"});
  EXPECT_EQ(w->dst, EntityId{"ue1"});
  EXPECT_EQ(w->corr, CorrId{"ue1.9"});
  EXPECT_EQ(w->attr("mode"), "d2d");
  EXPECT_EQ(w->attr("cause"), "");
  EXPECT_FALSE(parse_wire("phase from=off to=attaching"));
}

TEST(Wire, DataPacketCarriesDigest) {
  Message m;
  m.kind = MessageKind::DataPacket;
  m.src = EntityId{"ue1"};
  m.dst = EntityId{"enb1"};
  m.corr = CorrId{"ue1.f1#1"};
  const Bytes bytes{1, 2, 3};
  m.payload.data = std::make_shared<const Bytes>(bytes);
  EXPECT_EQ(format_wire(m), fmt::format("DataPacket(ue1->enb1,ue1.f1#1) digest={:08x}",
                                        payload_digest(bytes)));
}

TEST(Labels, ParsesKeyValues) {
  const Labels l = parse_labels("temp-issue temp=enb1-t1 ue=ue1 until=301.005000");
  EXPECT_EQ(l.label, "temp-issue");
  EXPECT_EQ(l.get("temp"), "enb1-t1");
  EXPECT_EQ(l.get("until"), "301.005000");
  EXPECT_EQ(l.get("missing"), "");
}

// Property: serialize followed by deserialize is the identity on any
// well-formed trace.
TEST(Trace, RoundTripThousandRandomRecords) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789=.,->()#* _";
  Trace trace;
  SimTime t{0};
  for (int i = 0; i < 1000; ++i) {
    t += SimTime{static_cast<long long>(rng() % 5000)};
    TraceRecord r;
    r.t = t;
    r.event = static_cast<TraceEvent>(rng() % 6);
    r.entity = EntityId{"e" + std::to_string(rng() % 50)};
    const std::size_t len = rng() % 40;
    for (std::size_t k = 0; k < len; ++k) r.detail += alphabet[rng() % alphabet.size()];
    trace.push_back(std::move(r));
  }
  const std::string text = serialize_trace(trace);
  EXPECT_EQ(deserialize_trace(text), trace);
  EXPECT_EQ(serialize_trace(deserialize_trace(text)), text);
}

TEST(Trace, RejectsMalformedInput) {
  EXPECT_THROW(deserialize_trace("0.000000 ue1 teleport x\n"), SimError);
  EXPECT_THROW(deserialize_trace("abc ue1 send x\n"), SimError);
  Trace unsorted{{SimTime{5}, TraceEvent::Send, EntityId{"a"}, "x"},
                 {SimTime{1}, TraceEvent::Send, EntityId{"a"}, "y"}};
  EXPECT_THROW(serialize_trace(unsorted), SimError);
  Trace multiline{{SimTime{1}, TraceEvent::Send, EntityId{"a"}, "x\ny"}};
  EXPECT_THROW(serialize_trace(multiline), SimError);
}

}  // namespace
}  // namespace d2d
