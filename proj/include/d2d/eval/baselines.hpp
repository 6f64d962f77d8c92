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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/core/trace.hpp"

namespace d2d::eval {

// Signalling models. S1-S4 are the EPC-centric alternatives, HYBRID is the
// simulated model and PER_REQUEST is HYBRID without the authorization cache
// (every discovery request is checked with the MME).
enum class ModelId { S1, S2, S3, S4, Hybrid, PerRequest };

inline constexpr std::array<ModelId, 6> kAllModels = {ModelId::S1, ModelId::S2, ModelId::S3,
                                                      ModelId::S4, ModelId::Hybrid,
                                                      ModelId::PerRequest};

std::string_view to_string(ModelId id) noexcept;
// Accepts the short ids (S1 ... S4, HYBRID, PER_REQUEST, any case) and the
// long forms S1_mme_sip, S2_gw_filter, S3_gw_prose, S4_prose_server.
std::optional<ModelId> parse_model_id(std::string_view text) noexcept;

// Procedure counts extracted from a run; the input of every cost model.
struct WorkloadEvents {
  std::uint64_t attaches = 0;             // completed attaches
  std::uint64_t attach_rejects_hss = 0;   // rejected after the HSS lookup
  std::uint64_t attach_rejects_mme = 0;   // rejected by the MME alone
  std::uint64_t authz_grants = 0;         // authorizations handed to an eNB at attach
  std::uint64_t separate_pushes = 0;      // ... of which sent as AuthzPush
  std::uint64_t discovery_requests = 0;   // to an eNB, retries included
  std::uint64_t discovery_unattached = 0; // rejected before any authorization step
  std::uint64_t cache_misses = 0;         // eNB authorization checks with the MME
  std::uint64_t server_discoveries = 0;   // to a ProSe server
  std::uint64_t comm_requests = 0;
  std::uint64_t comm_rejects = 0;
  std::uint64_t d2d_flows = 0;            // pairs established on the D2D path
  std::uint64_t epc_flows = 0;            // pairs established on the EPC path
  std::uint64_t failed_bearer_pairs = 0;  // pairs refused by the MME
  std::uint64_t handovers = 0;            // pairs moved back to the EPC path

  friend bool operator==(const WorkloadEvents&, const WorkloadEvents&) = default;
};

inline constexpr std::array<std::string_view, 6> kCostColumns = {"ue", "enb", "mme",
                                                                 "hss", "pgw", "prose"};

// Control messages handled per entity class; every message counts once at
// its sender and once at its receiver.
struct CostVector {
  std::array<std::uint64_t, 6> per_entity{};
  std::uint64_t mme_authz_exchanges = 0;
  std::uint64_t authz_exchanges = 0;  // MME exchanges plus ProSe-server checks

  std::uint64_t& at(std::string_view column);
  std::uint64_t at(std::string_view column) const;
  std::uint64_t total() const noexcept;

  friend bool operator==(const CostVector&, const CostVector&) = default;
};

WorkloadEvents events_from_trace(std::span<const TraceRecord> trace);

// Analytic cost from the documented per-model step lists.
CostVector baseline_signaling_cost(ModelId model, const WorkloadEvents& events);

// Measured cost of a simulated run (control sends only).
CostVector trace_cost(std::span<const TraceRecord> trace);

inline constexpr std::array<std::string_view, 5> kFeatureAttributes = {
    "Direct or EPC-based discovery?",
    "D2D bearer mechanism?",
    "EPC impacted entities",
    "Support for D2D Authorization?",
    "Support for session continuity at handover?",
};

struct FeatureRow {
  std::string solution;
  std::array<std::string, 5> cells;
};

// Solutions 1-4 followed by HYBRID.
std::vector<FeatureRow> feature_matrix();
// Row for a model; PER_REQUEST shares HYBRID's features.
FeatureRow feature_row(ModelId model);

}  // namespace d2d::eval
