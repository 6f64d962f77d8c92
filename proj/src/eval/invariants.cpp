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

#include "d2d/eval/invariants.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "d2d/core/message.hpp"

namespace d2d::eval {
namespace {

std::uint64_t seq_of(std::string_view corr) {
  const auto hash = corr.find('#');
  if (hash == std::string_view::npos) return 0;
  return std::stoull(std::string(corr.substr(hash + 1)));
}

std::string_view flow_of(std::string_view corr) { return corr.substr(0, corr.find('#')); }

std::set<std::string, std::less<>> split_csv(std::string_view text) {
  std::set<std::string, std::less<>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) out.emplace(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

struct TempInfo {
  SimTime until{0};
  bool retired = false;
};

struct AuthzInfo {
  SimTime stored{0};
  SimTime until{0};
  std::set<std::string, std::less<>> services;
};

struct L2Info {
  std::string rb_a, rb_b, ue_a, ue_b;
  std::set<std::string, std::less<>> bearers;
};

class Checker {
 public:
  Checker(const sim::LinkProfile& links, CheckOptions options) : links_(links), options_(options) {}

  std::vector<Violation> run(std::span<const TraceRecord> trace) {
    SimTime last{0};
    for (const auto& r : trace) {
      if (r.t < last) add("time-order", r.t, r.entity.str() + " " + r.detail);
      last = std::max(last, r.t);
      end_ = last;
      switch (r.event) {
        case TraceEvent::Send: on_send(r); break;
        case TraceEvent::Recv: on_recv(r); break;
        case TraceEvent::StateChange: on_state(r); break;
        case TraceEvent::Drop: on_drop(r); break;
        default: break;
      }
    }
    finish();
    return std::move(out_);
  }

 private:
  void add(std::string_view name, SimTime t, std::string detail) {
    out_.push_back(Violation{std::string(name), t, std::move(detail)});
  }

  void on_send(const TraceRecord& r) {
    auto w = parse_wire(r.detail);
    if (!w) return;
    sends_[r.detail].push_back(r.t);
    const EntityClass sc = classify(w->src);
    const EntityClass dc = classify(w->dst);
    if (w->kind == MessageKind::D2DCommAccept && w->attr("mode") == "d2d" &&
        sc == EntityClass::Enb && dc == EntityClass::Ue) {
      bool found = false;
      for (const auto& [rb, e] : l2_[w->src.str()]) {
        if (e.ue_a == w->dst.str() || e.ue_b == w->dst.str()) found = true;
      }
      if (!found) add("l2-mme-bijection", r.t, "d2d accept without L2 route: " + r.detail);
    }
    if (w->kind == MessageKind::D2DDiscoveryAccept && sc == EntityClass::Enb &&
        !issued_corrs_.contains(w->corr.str())) {
      add("authz-precedes-accept", r.t, "discovery accept without temp issue: " + r.detail);
    }
    if (w->kind == MessageKind::DataPacket && sc == EntityClass::Ue) {
      const std::string corr = w->corr.str();
      if (!origins_.emplace(corr, r.t).second) {
        add("exactly-once", r.t, "packet sent twice: " + corr);
      }
      origin_ue_[corr] = w->src.str();
    }
  }

  void on_recv(const TraceRecord& r) {
    auto w = parse_wire(r.detail);
    if (!w) return;
    const EntityClass sc = classify(w->src);
    const EntityClass dc = classify(w->dst);
    const bool air = is_air(w->kind);
    SimTime expected{0};
    try {
      expected = air ? links_.ue_ue : links_.delay(sc, dc);
    } catch (const std::exception&) {
      add("causality", r.t, "no link for " + r.detail);
      return;
    }
    if (!air || w->dst != kBroadcast) {
      if (r.entity != w->dst) add("causality", r.t, "received by " + r.entity.str() + ": " + r.detail);
    }
    auto it = sends_.find(r.detail);
    bool ok = false;
    if (it != sends_.end()) {
      auto& times = it->second;
      for (auto t = times.begin(); t != times.end(); ++t) {
        const SimTime d = r.t - *t;
        if (d == expected || (links_.jitter.count() > 0 && d >= expected)) {
          ok = true;
          // A broadcast reaches many receivers; unicast sends are consumed.
          if (w->dst != kBroadcast) times.erase(t);
          break;
        }
      }
    }
    if (!ok) add("causality", r.t, "no matching send: " + r.detail);

    const EntityClass at = classify(r.entity);
    if (w->kind == MessageKind::DataPacket) {
      if (at == EntityClass::Mme || at == EntityClass::Hss) {
        add("epc-offload", r.t, "data packet at " + r.entity.str() + ": " + r.detail);
      }
      const std::string corr = w->corr.str();
      if (at == EntityClass::Pgw) {
        auto o = origin_ue_.find(corr);
        if (o != origin_ue_.end() && d2d_installed(o->second)) {
          add("epc-offload", r.t, "D2D packet through the PGW: " + r.detail);
        }
      }
      if (at == EntityClass::Ue) on_delivery(r, corr);
    }
  }

  void on_delivery(const TraceRecord& r, const std::string& corr) {
    auto o = origin_ue_.find(corr);
    if (o == origin_ue_.end()) {
      add("exactly-once", r.t, "delivery of an unsent packet: " + corr);
      return;
    }
    if (o->second == r.entity.str()) return;  // hairpin back to the origin is not a delivery
    if (!delivered_.insert(corr).second) {
      add("exactly-once", r.t, "duplicate delivery: " + corr);
      return;
    }
    const std::string flow(flow_of(corr));
    const std::uint64_t seq = seq_of(corr);
    auto [it, fresh] = last_seq_.emplace(flow, seq);
    if (!fresh) {
      if (seq < it->second) add("exactly-once", r.t, "out of order: " + corr);
      it->second = std::max(it->second, seq);
    }
  }

  void on_drop(const TraceRecord& r) {
    const auto space = r.detail.find(' ');
    if (space == std::string::npos) return;
    auto w = parse_wire(std::string_view(r.detail).substr(space + 1));
    if (w && w->kind == MessageKind::DataPacket) {
      add("exactly-once", r.t, "data packet dropped at " + r.entity.str() + ": " + r.detail);
    }
  }

  bool d2d_installed(const std::string& ue) const {
    for (const auto& [enb, entries] : l2_) {
      for (const auto& [rb, e] : entries) {
        if (e.ue_a == ue || e.ue_b == ue) return true;
      }
    }
    return false;
  }

  void on_state(const TraceRecord& r) {
    const Labels l = parse_labels(r.detail);
    const std::string who = r.entity.str();
    const auto time = [&](std::string_view key) {
      return parse_time(l.get(key)).value_or(SimTime::max());
    };

    if (l.label == "temp-issue") {
      const std::string temp(l.get("temp"));
      temps_[temp] = TempInfo{time("until"), false};
      issued_corrs_.insert(std::string(l.get("corr")));
      check_authorized(r, l);
    } else if (l.label == "temp-expire" || l.label == "temp-revoke") {
      temps_[std::string(l.get("temp"))].retired = true;
    } else if (l.label == "match") {
      const std::string temp(l.get("temp"));
      auto it = temps_.find(temp);
      if (it == temps_.end()) {
        add("temp-liveness", r.t, who + " matched unknown temp " + temp);
      } else if (it->second.retired || r.t >= it->second.until) {
        add("temp-liveness", r.t, who + " matched expired temp " + temp);
      }
    } else if (l.label == "slot-grant") {
      auto& held = slots_[who];
      const std::string slot(l.get("slot"));
      auto [it, fresh] = held.emplace(slot, std::string(l.get("temp")));
      if (!fresh) {
        add("slot-exclusivity", r.t,
            fmt::format("{} slot {} granted to {} while held by {}", who, slot, l.get("temp"),
                        it->second));
        it->second = std::string(l.get("temp"));
      }
    } else if (l.label == "slot-free") {
      auto& held = slots_[who];
      auto it = held.find(std::string(l.get("slot")));
      if (it != held.end() && it->second == l.get("temp")) held.erase(it);
    } else if (l.label == "l2-install") {
      on_install(r, l);
    } else if (l.label == "l2-remove") {
      auto& entries = l2_[who];
      entries.erase(std::string(l.get("rb_a")));
    } else if (l.label == "authz-store") {
      authz_[std::string(l.get("d2d"))] =
          AuthzInfo{r.t, time("until"), split_csv(l.get("services"))};
    } else if (l.label == "authz-verified") {
      verified_[std::string(l.get("d2d"))] = {r.t, split_csv(l.get("services"))};
    } else if (l.label == "bearer-active") {
      mme_bearers_[std::string(l.get("id"))] = r.t;
    } else if (l.label == "bearer-handed_over") {
      mme_bearers_.erase(std::string(l.get("id")));
    } else if (l.label == "bearer") {
      const std::string ip(l.get("ip"));
      auto [it, fresh] = ips_.emplace(who, ip);
      if (!fresh && it->second != ip) {
        add("ip-constancy", r.t,
            fmt::format("{} uses {} after {}", who, ip, it->second));
      }
    } else if (l.label == "context-create") {
      const std::string ue(l.get("ue"));
      if (!contexts_.insert(ue).second) {
        add("attach-idempotence", r.t, "second context for " + ue);
      }
    }
  }

  void on_install(const TraceRecord& r, const Labels& l) {
    const std::string who = r.entity.str();
    L2Info e{std::string(l.get("rb_a")), std::string(l.get("rb_b")), std::string(l.get("ue_a")),
             std::string(l.get("ue_b")), split_csv(l.get("bearers"))};
    auto& entries = l2_[who];
    if (e.rb_a == e.rb_b) {
      add("rb-exclusivity", r.t, fmt::format("{} pair shares radio bearer {}", who, e.rb_a));
    }
    for (const auto& [key, other] : entries) {
      for (const std::string& rb : {e.rb_a, e.rb_b}) {
        if (rb == other.rb_a || rb == other.rb_b) {
          add("rb-exclusivity", r.t, fmt::format("{} radio bearer {} already routed", who, rb));
        }
      }
    }
    for (const auto& b : e.bearers) {
      if (!mme_bearers_.contains(b)) {
        add("l2-mme-bijection", r.t, fmt::format("{} routes bearer {} unknown to the MME", who, b));
      }
    }
    entries[e.rb_a] = std::move(e);
  }

  void check_authorized(const TraceRecord& r, const Labels& l) {
    const std::string d2d(l.get("d2d"));
    const std::string_view app = l.get("app");
    if (auto v = verified_.find(d2d);
        v != verified_.end() && v->second.first == r.t && v->second.second.contains(app)) {
      return;
    }
    if (auto a = authz_.find(d2d); a != authz_.end()) {
      const AuthzInfo& info = a->second;
      if (info.stored <= r.t && r.t < info.until && info.services.contains(app)) return;
    }
    add("authz-precedes-accept", r.t,
        fmt::format("{} issued {} to {} without authorization for {}", r.entity.str(),
                    l.get("temp"), d2d, app));
  }

  void finish() {
    for (const auto& [enb, entries] : l2_) {
      for (const auto& [rb, e] : entries) {
        for (const auto& b : e.bearers) {
          if (!mme_bearers_.contains(b)) {
            add("l2-mme-bijection", end_,
                fmt::format("{} routes bearer {} not active at the MME", enb, b));
          }
        }
      }
    }
    std::set<std::string> routed;
    for (const auto& [enb, entries] : l2_) {
      for (const auto& [rb, e] : entries) routed.insert(e.bearers.begin(), e.bearers.end());
    }
    for (const auto& [b, since] : mme_bearers_) {
      if (!routed.contains(b) && since + options_.grace <= end_) {
        add("l2-mme-bijection", end_, "MME bearer " + b + " has no L2 route");
      }
    }
    for (const auto& [corr, sent] : origins_) {
      if (!delivered_.contains(corr) && sent + options_.grace <= end_) {
        add("exactly-once", end_, "packet never delivered: " + corr);
      }
    }
  }

  const sim::LinkProfile& links_;
  CheckOptions options_;
  SimTime end_{0};
  std::vector<Violation> out_;

  std::unordered_map<std::string, std::deque<SimTime>> sends_;
  std::map<std::string, TempInfo> temps_;
  std::set<std::string> issued_corrs_;
  std::map<std::string, std::map<std::string, std::string, std::less<>>> slots_;
  std::map<std::string, std::map<std::string, L2Info>> l2_;  // eNB -> rb_a -> entry
  std::map<std::string, AuthzInfo> authz_;
  std::map<std::string, std::pair<SimTime, std::set<std::string, std::less<>>>> verified_;
  std::map<std::string, SimTime> mme_bearers_;
  std::map<std::string, std::string> ips_;
  std::set<std::string> contexts_;
  std::map<std::string, SimTime> origins_;
  std::unordered_map<std::string, std::string> origin_ue_;
  std::set<std::string> delivered_;
  std::map<std::string, std::uint64_t> last_seq_;
};

}  // namespace

std::vector<Violation> check_invariants(std::span<const TraceRecord> trace,
                                        const sim::LinkProfile& links, CheckOptions options) {
  return Checker(links, options).run(trace);
}

std::string format_violation(const Violation& v) {
  return fmt::format("{} {} {}", format_time(v.t), v.invariant, v.detail);
}

}  // namespace d2d::eval
