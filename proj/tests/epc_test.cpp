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
#include "d2d/epc/hss.hpp"
#include "d2d/epc/mme.hpp"
#include "d2d/epc/pgw.hpp"
#include "d2d/epc/prose_server.hpp"

namespace d2d::epc {
namespace {

using namespace std::chrono_literals;

Imsi imsi(int n) { return *Imsi::parse("00101000000000" + std::to_string(n)); }

SubscriberProfile profile(int n, std::set<D2DAppId> services = {D2DAppId{"app1"}}) {
  return SubscriberProfile{imsi(n), D2DId{"d2d-" + std::to_string(n)}, std::move(services)};
}

class Probe : public sim::Agent {
 public:
  explicit Probe(std::string id) : id_(std::move(id)) {}
  const EntityId& id() const noexcept override { return id_; }
  void on_message(const Message& m) override { got.push_back(m); }
  std::vector<MessageKind> kinds() const {
    std::vector<MessageKind> out;
    for (const auto& m : got) out.push_back(m.kind);
    return out;
  }
  std::vector<Message> got;

 private:
  EntityId id_;
};

TEST(Hss, SubscriberLookups) {
  sim::Engine e;
  sim::Network net(e, {});
  Hss hss(net);
  hss.add_subscriber(profile(1));
  EXPECT_THROW(hss.add_subscriber(profile(1)), SimError);
  SubscriberProfile other = profile(2);
  other.d2d_id = D2DId{"d2d-1"};
  EXPECT_THROW(hss.add_subscriber(other), SimError);
  EXPECT_EQ(hss.size(), 1u);
  EXPECT_EQ(hss.find(D2DId{"d2d-1"})->imsi, imsi(1));

  const auto with = hss.update_location(imsi(1), true);
  EXPECT_EQ(with.d2d_id, D2DId{"d2d-1"});
  EXPECT_EQ(with.authorized_services.size(), 1u);
  const auto without = hss.update_location(imsi(1), false);
  EXPECT_TRUE(without.d2d_id.empty());
  EXPECT_TRUE(without.authorized_services.empty());
  try {
    hss.update_location(imsi(9), true);
    FAIL();
  } catch (const SimError& err) {
    EXPECT_EQ(err.cause(), "unknown-subscriber");
  }
}

TEST(Pgw, AllocatesOnePdnPerAttachedUe) {
  sim::Engine e;
  sim::Network net(e, {});
  std::set<EntityId> attached{EntityId{"ue1"}, EntityId{"ue2"}};
  Pgw pgw(net, [&](const EntityId& u) { return attached.contains(u); });
  const IpAddress a = pgw.establish_pdn(EntityId{"ue1"});
  const IpAddress b = pgw.establish_pdn(EntityId{"ue2"});
  EXPECT_NE(a, b);
  EXPECT_EQ(pgw.default_bearer(EntityId{"ue1"})->ip, a);
  EXPECT_EQ(pgw.default_bearer(EntityId{"ue1"})->kind, BearerKind::DefaultEps);
  EXPECT_THROW(pgw.establish_pdn(EntityId{"ue1"}), SimError);
  EXPECT_THROW(pgw.establish_pdn(EntityId{"ue3"}), SimError);
  EXPECT_EQ(pgw.pdn_count(), 2u);
}

struct Core {
  sim::Engine engine;
  sim::Network net{engine, {}};
  Hss hss{net};
  Mme mme;
  Pgw pgw{net, [this](const EntityId& u) { return mme.attached(u); }};
  Probe enb1{"enb1"}, enb2{"enb2"}, ue1{"ue1"}, ue2{"ue2"}, ue3{"ue3"};

  explicit Core(MmeConfig cfg = {}) : mme(net, cfg) {
    for (sim::Agent* a : std::initializer_list<sim::Agent*>{&hss, &mme, &pgw, &enb1, &enb2, &ue1,
                                                            &ue2, &ue3}) {
      net.add(*a);
    }
    hss.add_subscriber(profile(1));
    hss.add_subscriber(profile(2, {D2DAppId{"app2"}}));
    net.set_serving_cell(EntityId{"ue1"}, EntityId{"enb1"});
    net.set_serving_cell(EntityId{"ue2"}, EntityId{"enb1"});
    net.set_serving_cell(EntityId{"ue3"}, EntityId{"enb2"});
  }

  void attach(const char* ue, int n) {
    Message m;
    m.kind = MessageKind::NasAttachReq;
    m.src = EntityId{ue};
    m.dst = EntityId{"mme"};
    m.corr = CorrId{std::string(ue) + ".1"};
    m.payload.imsi = imsi(n);
    m.payload.d2d_flag = true;
    net.send(m);
  }
};

TEST(Mme, AttachSequenceAndAuthorization) {
  Core c;
  c.attach("ue1", 1);
  c.engine.run_until(1s);
  EXPECT_EQ(c.ue1.kinds(),
            (std::vector<MessageKind>{MessageKind::NasAttachAccept, MessageKind::PdnConnectResp}));
  const Message& accept = c.ue1.got[0];
  EXPECT_EQ(accept.payload.d2d_id, D2DId{"d2d-1"});
  EXPECT_EQ(accept.payload.validity, 3600s);
  ASSERT_TRUE(c.mme.context(EntityId{"ue1"}));
  EXPECT_TRUE(c.mme.context(EntityId{"ue1"})->default_bearer);
  EXPECT_EQ(c.mme.context(D2DId{"d2d-1"})->ue, EntityId{"ue1"});
}

TEST(Mme, UnknownSubscriberRejected) {
  Core c;
  c.attach("ue1", 7);
  c.engine.run_until(1s);
  ASSERT_EQ(c.ue1.kinds(), (std::vector<MessageKind>{MessageKind::NasAttachReject}));
  EXPECT_EQ(c.ue1.got[0].payload.cause, "unknown-subscriber");
  EXPECT_FALSE(c.mme.attached(EntityId{"ue1"}));
}

TEST(Mme, SecondAttachIsIdempotent) {
  Core c;
  c.attach("ue1", 1);
  c.engine.run_until(1s);
  c.attach("ue1", 1);
  c.engine.run_until(2s);
  EXPECT_EQ(c.mme.context_count(), 1u);
  EXPECT_EQ(c.ue1.got.back().kind, MessageKind::NasAttachReject);
  EXPECT_EQ(c.ue1.got.back().payload.cause, "already-attached");
  EXPECT_EQ(c.pgw.pdn_count(), 1u);
}

TEST(Mme, SeparatePushGoesToServingEnb) {
  MmeConfig cfg;
  cfg.push = AuthzPush::Separate;
  Core c(cfg);
  c.attach("ue1", 1);
  c.engine.run_until(1s);
  ASSERT_EQ(c.enb1.kinds(), (std::vector<MessageKind>{MessageKind::AuthzPush}));
  EXPECT_FALSE(c.ue1.got[0].payload.d2d_id);
}

TEST(Mme, ZeroValidityGrantsNothingAtAttach) {
  MmeConfig cfg;
  cfg.authz_validity = 0s;
  Core c(cfg);
  c.attach("ue1", 1);
  c.engine.run_until(1s);
  EXPECT_FALSE(c.ue1.got[0].payload.d2d_id);
  EXPECT_TRUE(c.enb1.got.empty());
}

TEST(Mme, D2DBearerNeedsAuthorizedAttachedPair) {
  Core c;
  c.hss.add_subscriber(profile(4, {}));
  c.attach("ue1", 1);
  c.attach("ue2", 4);  // D2D subscriber without any service
  c.attach("ue3", 1);  // same IMSI as ue1: rejected
  c.engine.run_until(1s);
  const EntityId ue1{"ue1"}, ue2{"ue2"}, ue3{"ue3"}, enb1{"enb1"};
  EXPECT_FALSE(c.mme.attached(ue3));
  EXPECT_FALSE(c.ue2.got[0].payload.d2d_id);  // nothing granted at attach

  try {
    c.mme.create_d2d_bearer(ue1, ue2, enb1, 9);
    FAIL();
  } catch (const SimError& e) {
    EXPECT_EQ(e.cause(), "not-authorized");
  }
  try {
    c.mme.create_d2d_bearer(ue1, ue3, enb1, 9);
    FAIL();
  } catch (const SimError& e) {
    EXPECT_EQ(e.cause(), "not-attached");
  }
  EXPECT_EQ(c.mme.active_bearers(), 0u);
}

TEST(Mme, HandoverTransitions) {
  Core c;
  c.hss.add_subscriber(profile(3));
  c.attach("ue1", 1);
  c.attach("ue2", 3);
  c.engine.run_until(1s);
  const BearerId b = c.mme.create_d2d_bearer(EntityId{"ue1"}, EntityId{"ue2"}, EntityId{"enb1"}, 9);
  EXPECT_EQ(c.mme.bearer(b)->state, BearerState::Active);
  EXPECT_EQ(c.mme.active_bearers(), 1u);
  c.mme.handover_to_epc(b);
  EXPECT_EQ(c.mme.bearer(b)->state, BearerState::HandedOver);
  EXPECT_THROW(c.mme.handover_to_epc(b), SimError);
  EXPECT_THROW(c.mme.handover_to_epc(BearerId{"b99"}), SimError);
}

TEST(ProseServer, GrantsOnlyAuthorizedApps) {
  sim::Engine e;
  sim::Network net(e, {});
  Hss hss(net);
  ProseServer prose(net, ProseConfig{});
  Probe ue1{"ue1"};
  net.add(hss);
  net.add(prose);
  net.add(ue1);
  hss.add_subscriber(profile(1));
  for (const char* app : {"app1", "app2"}) {
    Message m;
    m.kind = MessageKind::D2DDiscoveryReq;
    m.src = EntityId{"ue1"};
    m.dst = EntityId{"prose"};
    m.corr = CorrId{std::string("ue1.") + app};
    m.payload.d2d_id = D2DId{"d2d-1"};
    m.payload.app_id = D2DAppId{app};
    net.send(m);
  }
  e.run_until(1s);
  ASSERT_EQ(ue1.got.size(), 2u);
  EXPECT_EQ(ue1.got[0].kind, MessageKind::D2DDiscoveryAccept);
  EXPECT_EQ(ue1.got[0].payload.temp_id->value, "prose-t1");
  EXPECT_EQ(ue1.got[1].kind, MessageKind::D2DDiscoveryReject);
  EXPECT_EQ(ue1.got[1].payload.cause, "not-authorized");
  EXPECT_EQ(ue1.got[0].payload.config->slot_index, 0);
}

}  // namespace
}  // namespace d2d::epc
