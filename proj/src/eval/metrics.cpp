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

#include "d2d/eval/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "d2d/core/message.hpp"

namespace d2d::eval {
namespace {

bool epc_entity(const EntityId& id) {
  const EntityClass c = classify(id);
  return c == EntityClass::Mme || c == EntityClass::Hss || c == EntityClass::Pgw;
}

std::string_view flow_of(std::string_view corr) { return corr.substr(0, corr.find('#')); }

// Owner of a flow id "ue1.f3" is "ue1".
std::string_view flow_owner(std::string_view flow) { return flow.substr(0, flow.rfind(".f")); }

std::string ms(SimTime t) { return fmt::format("{:.3f}", static_cast<double>(t.count()) / 1000.0); }

}  // namespace

std::uint64_t count_mme_authz_exchanges(std::span<const TraceRecord> trace) {
  std::uint64_t n = 0;
  for (const auto& r : trace) {
    if (r.event != TraceEvent::Send) continue;
    auto w = parse_wire(r.detail);
    if (!w) continue;
    if ((w->kind == MessageKind::NasAttachAccept && w->attr("authz") == "1") ||
        w->kind == MessageKind::AuthzPush || w->kind == MessageKind::D2DAuthCheckReq) {
      ++n;
    }
  }
  return n;
}

MetricsReport collect_metrics(std::span<const TraceRecord> trace) {
  MetricsReport rep;

  struct Packet {
    std::uint64_t hops = 0;
  };
  std::unordered_map<std::string, Packet> packets;  // by corr
  std::map<EntityId, std::vector<SimTime>> comm_req;   // send times per UE
  std::map<EntityId, std::vector<SimTime>> comm_acc;   // recv times per UE
  struct ModeLabel {
    SimTime t;
    Labels labels;
  };
  std::vector<ModeLabel> modes;
  struct Handover {
    std::string id;
    EntityId enb;
    SimTime start{-1};
    std::set<std::string> corrs;
    SimTime end{-1};
    std::size_t releases_seen = 0;
  };
  std::vector<Handover> handovers;
  std::map<std::string, std::size_t> handover_by_corr;

  for (const auto& r : trace) {
    if (r.event == TraceEvent::StateChange) {
      if (r.detail.starts_with("mode ")) {
        modes.push_back({r.t, parse_labels(r.detail)});
      } else if (r.detail.starts_with("handover ")) {
        handovers.push_back({std::string(parse_labels(r.detail).get("id")), r.entity, SimTime{-1}, {}, SimTime{-1}, 0});
      }
      continue;
    }
    if (r.event != TraceEvent::Send && r.event != TraceEvent::Recv) continue;
    auto w = parse_wire(r.detail);
    if (!w) continue;
    const bool send = r.event == TraceEvent::Send;

    if (is_control(w->kind)) {
      auto& c = rep.control[r.entity];
      (send ? c.sent : c.recv) += 1;
    }
    switch (w->kind) {
      case MessageKind::DataPacket: {
        if (epc_entity(r.entity)) ++rep.epc_data_messages;
        const std::string& corr = w->corr.str();
        const std::string flow(flow_of(corr));
        FlowStats& fs = rep.flows[flow];
        if (send) {
          Packet& p = packets[corr];
          if (p.hops++ == 0) ++fs.packets;
        } else if (classify(r.entity) == EntityClass::Ue && r.entity.str() != flow_owner(flow)) {
          ++fs.delivered;
        }
        break;
      }
      case MessageKind::D2DCommReq:
        if (send) comm_req[r.entity].push_back(r.t);
        break;
      case MessageKind::D2DCommAccept:
        if (!send) comm_acc[r.entity].push_back(r.t);
        break;
      case MessageKind::BearerRelease:
        if (send && !handovers.empty()) {
          Handover& h = handovers.back();
          if (h.enb == r.entity && h.releases_seen < 2) {
            if (h.start.count() < 0) h.start = r.t;
            h.corrs.insert(w->corr.str());
            handover_by_corr[w->corr.str()] = handovers.size() - 1;
            ++h.releases_seen;
          }
        }
        break;
      case MessageKind::HandoverCmd:
        if (!send && classify(r.entity) == EntityClass::Ue) {
          auto it = handover_by_corr.find(w->corr.str());
          if (it != handover_by_corr.end()) {
            Handover& h = handovers[it->second];
            h.end = std::max(h.end, r.t);
          }
        }
        break;
      default:
        break;
    }
  }

  for (const auto& [corr, p] : packets) {
    FlowStats& fs = rep.flows[std::string(flow_of(corr))];
    fs.min_hops = fs.min_hops == 0 ? p.hops : std::min(fs.min_hops, p.hops);
    fs.max_hops = std::max(fs.max_hops, p.hops);
  }

  for (const auto& m : modes) {
    const EntityId a{std::string(m.labels.get("ue_a"))};
    const EntityId b{std::string(m.labels.get("ue_b"))};
    std::optional<SimTime> first_req;
    std::optional<SimTime> last_acc;
    bool complete = true;
    for (const EntityId& ue : {a, b}) {
      const auto& reqs = comm_req[ue];
      auto r = std::upper_bound(reqs.begin(), reqs.end(), m.t);
      if (r == reqs.begin()) {
        complete = false;
        break;
      }
      const SimTime req = *std::prev(r);
      first_req = first_req ? std::min(*first_req, req) : req;
      const auto& accs = comm_acc[ue];
      auto acc = std::lower_bound(accs.begin(), accs.end(), m.t);
      if (acc == accs.end()) {
        complete = false;
        break;
      }
      last_acc = last_acc ? std::max(*last_acc, *acc) : *acc;
    }
    if (!complete) continue;
    rep.setups.push_back(FlowSetup{std::string(m.labels.get("pair")), a, b,
                                   std::string(m.labels.get("path")), *last_acc - *first_req});
  }

  for (const auto& h : handovers) {
    if (h.start.count() >= 0 && h.end.count() >= 0) rep.handover_interruptions[h.id] = h.end - h.start;
  }
  rep.mme_authz_exchanges = count_mme_authz_exchanges(trace);
  return rep;
}

void write_metrics_csv(const MetricsReport& rep, std::ostream& out) {
  out << "metric,key,value\n";
  for (const auto& [id, c] : rep.control) {
    out << "control_sent," << id.str() << ',' << c.sent << '\n';
    out << "control_recv," << id.str() << ',' << c.recv << '\n';
  }
  for (const auto& s : rep.setups) {
    out << "setup_delay_ms," << s.pair << ',' << ms(s.delay) << '\n';
    out << "setup_path," << s.pair << ',' << s.path << '\n';
  }
  for (const auto& [flow, f] : rep.flows) {
    out << "flow_packets," << flow << ',' << f.packets << '\n';
    out << "flow_delivered," << flow << ',' << f.delivered << '\n';
    out << "flow_hops_min," << flow << ',' << f.min_hops << '\n';
    out << "flow_hops_max," << flow << ',' << f.max_hops << '\n';
  }
  out << "epc_data_messages,," << rep.epc_data_messages << '\n';
  for (const auto& [id, t] : rep.handover_interruptions) {
    out << "handover_interruption_ms," << id << ',' << ms(t) << '\n';
  }
  out << "mme_authz_exchanges,," << rep.mme_authz_exchanges << '\n';
}

}  // namespace d2d::eval
