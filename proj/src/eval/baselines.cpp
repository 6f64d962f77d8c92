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

#include "d2d/eval/baselines.hpp"

#include <algorithm>
#include <cctype>

#include "d2d/core/error.hpp"
#include "d2d/core/message.hpp"

namespace d2d::eval {
namespace {

std::size_t column(std::string_view name) {
  for (std::size_t i = 0; i < kCostColumns.size(); ++i) {
    if (kCostColumns[i] == name) return i;
  }
  throw SimError("unknown-column", std::string(name));
}

std::optional<std::size_t> column(EntityClass c) {
  switch (c) {
    case EntityClass::Ue: return 0;
    case EntityClass::Enb: return 1;
    case EntityClass::Mme: return 2;
    case EntityClass::Hss: return 3;
    case EntityClass::Pgw: return 4;
    case EntityClass::Prose: return 5;
    default: return std::nullopt;
  }
}

// Per-procedure message load, in column order ue, enb, mme, hss, pgw, prose.
using Load = std::array<std::uint64_t, 6>;

void add(CostVector& c, const Load& load, std::uint64_t times) {
  for (std::size_t i = 0; i < load.size(); ++i) c.per_entity[i] += load[i] * times;
}

// Shared building blocks.
constexpr Load kAttach{3, 0, 7, 2, 2, 0};          // NAS attach + location update + PDN
constexpr Load kAttachRejectHss{2, 0, 4, 2, 0, 0};
constexpr Load kAttachRejectMme{2, 0, 2, 0, 0, 0};
constexpr Load kEpcBearer{3, 3, 4, 0, 2, 0};       // dedicated EPS bearer for one UE

CostVector hybrid(const WorkloadEvents& e) {
  CostVector c;
  add(c, kAttach, e.attaches);
  add(c, kAttachRejectHss, e.attach_rejects_hss);
  add(c, kAttachRejectMme, e.attach_rejects_mme);
  add(c, {0, 1, 1, 0, 0, 0}, e.separate_pushes);
  add(c, {2, 2, 0, 0, 0, 0}, e.discovery_requests);
  add(c, {0, 2, 2, 0, 0, 0}, e.cache_misses);
  add(c, {2, 0, 0, 2, 0, 4}, e.server_discoveries);
  add(c, {1, 1, 0, 0, 0, 0}, e.comm_requests);
  add(c, {1, 1, 0, 0, 0, 0}, e.comm_rejects);
  add(c, {6, 10, 4, 0, 0, 0}, e.d2d_flows);
  add(c, {2, 2, 0, 0, 0, 0}, e.epc_flows);
  add(c, {0, 4, 4, 0, 0, 0}, e.failed_bearer_pairs);
  add(c, {2, 6, 4, 0, 0, 0}, e.handovers);
  c.mme_authz_exchanges = e.authz_grants + e.cache_misses;
  c.authz_exchanges = c.mme_authz_exchanges + e.server_discoveries;
  return c;
}

// Attach and discovery-session counts common to the alternative models.
struct Common {
  std::uint64_t discoveries;
  std::uint64_t flows;
};

Common common(const WorkloadEvents& e) {
  return {e.discovery_requests + e.server_discoveries, e.d2d_flows + e.epc_flows};
}

CostVector alternative(ModelId m, const WorkloadEvents& e) {
  CostVector c;
  add(c, kAttach, e.attaches);
  add(c, kAttachRejectHss, e.attach_rejects_hss);
  add(c, kAttachRejectMme, e.attach_rejects_mme);
  const Common k = common(e);
  switch (m) {
    case ModelId::S1:
      add(c, {2, 0, 2, 0, 0, 0}, k.discoveries);
      add(c, kEpcBearer, 2 * k.flows);
      break;
    case ModelId::S2:
      add(c, kEpcBearer, 2 * k.flows);
      add(c, {4, 6, 4, 0, 2, 0}, k.flows);  // offload decision at the gateway
      add(c, kEpcBearer, 2 * e.handovers);
      break;
    case ModelId::S3:
      add(c, {2, 4, 2, 0, 4, 0}, k.discoveries);
      add(c, {4, 8, 8, 0, 4, 0}, k.flows);
      add(c, {4, 8, 8, 0, 4, 0}, e.handovers);
      c.mme_authz_exchanges = k.discoveries;
      c.authz_exchanges = k.discoveries;
      break;
    case ModelId::S4:
      add(c, {2, 0, 0, 2, 0, 4}, k.discoveries);
      add(c, kEpcBearer, 2 * k.flows);
      c.authz_exchanges = k.discoveries;
      break;
    default:
      break;
  }
  return c;
}

}  // namespace

std::string_view to_string(ModelId id) noexcept {
  switch (id) {
    case ModelId::S1: return "S1";
    case ModelId::S2: return "S2";
    case ModelId::S3: return "S3";
    case ModelId::S4: return "S4";
    case ModelId::Hybrid: return "HYBRID";
    case ModelId::PerRequest: return "PER_REQUEST";
  }
  return "?";
}

std::optional<ModelId> parse_model_id(std::string_view text) noexcept {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (up == "S1" || up == "S1_MME_SIP") return ModelId::S1;
  if (up == "S2" || up == "S2_GW_FILTER") return ModelId::S2;
  if (up == "S3" || up == "S3_GW_PROSE") return ModelId::S3;
  if (up == "S4" || up == "S4_PROSE_SERVER") return ModelId::S4;
  if (up == "HYBRID") return ModelId::Hybrid;
  if (up == "PER_REQUEST") return ModelId::PerRequest;
  return std::nullopt;
}

std::uint64_t& CostVector::at(std::string_view name) { return per_entity[column(name)]; }
std::uint64_t CostVector::at(std::string_view name) const { return per_entity[column(name)]; }

std::uint64_t CostVector::total() const noexcept {
  std::uint64_t n = 0;
  for (auto v : per_entity) n += v;
  return n;
}

WorkloadEvents events_from_trace(std::span<const TraceRecord> trace) {
  WorkloadEvents e;
  std::uint64_t failed_resps = 0;
  std::uint64_t d2d_accepts = 0;
  std::uint64_t epc_accepts = 0;
  std::uint64_t releases = 0;
  for (const auto& r : trace) {
    if (r.event != TraceEvent::Send) continue;
    auto w = parse_wire(r.detail);
    if (!w) continue;
    const EntityClass dst = classify(w->dst);
    switch (w->kind) {
      case MessageKind::NasAttachAccept:
        ++e.attaches;
        if (w->attr("authz") == "1") ++e.authz_grants;
        break;
      case MessageKind::NasAttachReject:
        ++(w->attr("cause") == "already-attached" ? e.attach_rejects_mme : e.attach_rejects_hss);
        break;
      case MessageKind::AuthzPush:
        ++e.authz_grants;
        ++e.separate_pushes;
        break;
      case MessageKind::D2DDiscoveryReq:
        ++(dst == EntityClass::Prose ? e.server_discoveries : e.discovery_requests);
        break;
      case MessageKind::D2DDiscoveryReject:
        if (classify(w->src) == EntityClass::Enb && w->attr("cause") == "not-attached") {
          ++e.discovery_unattached;
        }
        break;
      case MessageKind::D2DAuthCheckReq: ++e.cache_misses; break;
      case MessageKind::D2DCommReq: ++e.comm_requests; break;
      case MessageKind::D2DCommReject: ++e.comm_rejects; break;
      case MessageKind::D2DCommAccept:
        ++(w->attr("mode") == "d2d" ? d2d_accepts : epc_accepts);
        break;
      case MessageKind::D2DBearerSetupResp:
        if (!w->attr("cause").empty()) ++failed_resps;
        break;
      case MessageKind::BearerRelease: ++releases; break;
      default: break;
    }
  }
  e.d2d_flows = d2d_accepts / 2;
  e.epc_flows = epc_accepts / 2;
  e.failed_bearer_pairs = failed_resps / 2;
  e.handovers = releases / 2;
  return e;
}

CostVector baseline_signaling_cost(ModelId model, const WorkloadEvents& events) {
  switch (model) {
    case ModelId::Hybrid: return hybrid(events);
    case ModelId::PerRequest: {
      WorkloadEvents e = events;
      e.authz_grants = 0;
      e.separate_pushes = 0;
      e.cache_misses = e.discovery_requests - e.discovery_unattached;
      return hybrid(e);
    }
    case ModelId::S1:
    case ModelId::S2:
    case ModelId::S3:
    case ModelId::S4: return alternative(model, events);
  }
  throw SimError("unknown-model", std::to_string(static_cast<int>(model)));
}

CostVector trace_cost(std::span<const TraceRecord> trace) {
  CostVector c;
  for (const auto& r : trace) {
    if (r.event != TraceEvent::Send) continue;
    auto w = parse_wire(r.detail);
    if (!w || !is_control(w->kind)) continue;
    if (auto i = column(classify(w->src))) ++c.per_entity[*i];
    if (auto i = column(classify(w->dst))) ++c.per_entity[*i];
    if ((w->kind == MessageKind::NasAttachAccept && w->attr("authz") == "1") ||
        w->kind == MessageKind::AuthzPush || w->kind == MessageKind::D2DAuthCheckReq) {
      ++c.mme_authz_exchanges;
    }
    if (w->kind == MessageKind::ProseAuthReq) ++c.authz_exchanges;
  }
  c.authz_exchanges += c.mme_authz_exchanges;
  return c;
}

std::vector<FeatureRow> feature_matrix() {
  return {
      {"Solution 1",
       {"EPC-based discovery", "No", "MME", "No", "No"}},
      {"Solution 2",
       {"EPC-level discovery for offloading", "No", "PGW, SGW, eNB", "No", "No"}},
      {"Solution 3",
       {"EPC-level discovery for offloading", "Yes", "SGW, PGW, MME, eNB", "Yes", "No"}},
      {"Solution 4",
       {"Direct discovery", "No", "ProSe, HSS, MME", "Yes", "No"}},
      {"HYBRID",
       {"Direct discovery", "Yes", "eNB, MME, HSS", "Yes", "Yes"}},
  };
}

FeatureRow feature_row(ModelId model) {
  const auto rows = feature_matrix();
  switch (model) {
    case ModelId::S1: return rows[0];
    case ModelId::S2: return rows[1];
    case ModelId::S3: return rows[2];
    case ModelId::S4: return rows[3];
    case ModelId::Hybrid: return rows[4];
    case ModelId::PerRequest: {
      FeatureRow r = rows[4];
      r.solution = "PER_REQUEST";
      return r;
    }
  }
  throw SimError("unknown-model", std::to_string(static_cast<int>(model)));
}

}  // namespace d2d::eval
