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

#include "d2d/cli/commands.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "d2d/core/error.hpp"
#include "d2d/eval/baselines.hpp"
#include "d2d/eval/conformance.hpp"
#include "d2d/eval/invariants.hpp"
#include "d2d/eval/metrics.hpp"
#include "d2d/eval/simulation.hpp"

#ifndef D2D_CONFORMANCE_DIR
#define D2D_CONFORMANCE_DIR "conformance"
#endif

namespace d2d::cli {
namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_features(const std::vector<eval::FeatureRow>& rows, std::ostream& out) {
  out << "solution";
  for (auto a : eval::kFeatureAttributes) out << ',' << csv_field(a);
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.solution);
    for (const auto& c : r.cells) out << ',' << csv_field(c);
    out << '\n';
  }
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  eval::Scenario scenario;
  try {
    scenario = eval::load_scenario_file(config.scenario);
    if (config.seed) scenario.seed = *config.seed;
    if (config.duration_s) {
      if (!(*config.duration_s > 0)) throw SimError("invalid-duration", "--duration");
      scenario.duration = from_seconds(*config.duration_s);
    }
  } catch (const SimError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  Trace trace;
  try {
    trace = eval::simulate(scenario);
  } catch (const SimError& e) {
    err << "error: simulation: " << e.what() << '\n';
    return kExitInput;
  }

  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << config.out_dir.string() << ": " << ec.message() << '\n';
    return kExitInput;
  }
  if (config.trace) {
    std::ofstream f(config.out_dir / "trace.txt", std::ios::binary);
    serialize_trace(trace, f);
    if (!f) {
      err << "error: cannot write trace.txt\n";
      return kExitInput;
    }
  }
  const auto violations = eval::check_invariants(trace, scenario.links);
  {
    std::ofstream f(config.out_dir / "metrics.csv", std::ios::binary);
    eval::write_metrics_csv(eval::collect_metrics(trace), f);
    f << "invariant_violations,," << violations.size() << '\n';
    if (!f) {
      err << "error: cannot write metrics.csv\n";
      return kExitInput;
    }
  }
  out << fmt::format("{} records, {} invariant violations\n", trace.size(), violations.size());
  for (const auto& v : violations) err << "violation: " << eval::format_violation(v) << '\n';
  return violations.empty() ? kExitOk : kExitViolation;
}

int cmd_conformance(const ConformanceConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<eval::ConformanceVector> vectors;
  eval::ScenarioOverrides overrides;
  if (config.pairing_window_ms) {
    if (*config.pairing_window_ms < 0) {
      err << "error: invalid-duration: --pairing-window-ms\n";
      return kExitInput;
    }
    overrides.pairing_window = from_millis(*config.pairing_window_ms);
  }
  try {
    vectors = eval::load_vectors(config.vectors);
  } catch (const SimError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  bool all = true;
  for (const auto& v : vectors) {
    eval::ConformanceResult r;
    try {
      r = eval::run_vector(v, overrides);
    } catch (const SimError& e) {
      err << "error: " << v.name << ": " << e.what() << '\n';
      return kExitInput;
    }
    if (r.passed) {
      out << "PASS " << r.name << " (" << v.steps.size() << " messages)\n";
    } else {
      all = false;
      out << fmt::format("FAIL {}: step {} expected '{}' observed '{}'\n", r.name, r.divergence,
                         r.expected, r.observed);
    }
  }
  return all ? kExitOk : kExitViolation;
}

int cmd_compare(const std::filesystem::path& scenario_path, const std::vector<std::string>& models,
                std::ostream& out, std::ostream& err) {
  if (models.empty()) {
    write_features(eval::feature_matrix(), out);
    return kExitOk;
  }
  std::vector<eval::ModelId> ids;
  for (const auto& m : models) {
    auto id = eval::parse_model_id(m);
    if (!id) {
      err << "error: unknown-model: " << m << '\n';
      return kExitInput;
    }
    ids.push_back(*id);
  }
  Trace trace;
  try {
    trace = eval::simulate(eval::load_scenario_file(scenario_path));
  } catch (const SimError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const eval::WorkloadEvents events = eval::events_from_trace(trace);
  const eval::CostVector measured = eval::trace_cost(trace);

  out << "model";
  for (auto c : eval::kCostColumns) out << ',' << c;
  out << ",total,mme_authz_exchanges,authz_exchanges\n";
  int code = kExitOk;
  std::vector<eval::FeatureRow> rows;
  for (auto id : ids) {
    const eval::CostVector c = eval::baseline_signaling_cost(id, events);
    out << eval::to_string(id);
    for (auto v : c.per_entity) out << ',' << v;
    out << ',' << c.total() << ',' << c.mme_authz_exchanges << ',' << c.authz_exchanges << '\n';
    if (id == eval::ModelId::Hybrid && !(c == measured)) {
      err << "error: HYBRID analytic cost differs from the simulated trace\n";
      code = kExitViolation;
    }
    rows.push_back(eval::feature_row(id));
  }
  out << '\n';
  write_features(rows, out);
  return code;
}

int main(int argc, char** argv) {
  CLI::App app{"d2dsim: discrete-event simulator of LTE-assisted D2D discovery and communication"};
  app.require_subcommand(1);

  RunConfig run;
  std::uint64_t seed = 0;
  double duration = 0;
  bool no_trace = false;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and check its trace");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Seed override");
  auto* duration_opt = run_cmd->add_option("--duration", duration, "Duration override, seconds");
  run_cmd->add_option("--out", run.out_dir, "Output directory")->required();
  run_cmd->add_flag("--no-trace", no_trace, "Do not write trace.txt");

  ConformanceConfig conf;
  conf.vectors = D2D_CONFORMANCE_DIR;
  double window = 0;
  auto* conf_cmd = app.add_subcommand("conformance", "Replay the bundled call-flow vectors");
  conf_cmd->add_option("--vectors", conf.vectors, "Directory of .vec files");
  auto* window_opt =
      conf_cmd->add_option("--pairing-window-ms", window, "Override the eNB pairing window");

  std::filesystem::path compare_scenario;
  std::string model_list;
  auto* cmp_cmd = app.add_subcommand("compare", "Signalling cost and features per model");
  cmp_cmd->add_option("--scenario", compare_scenario, "Scenario JSON file")->required();
  cmp_cmd->add_option("--models", model_list,
                      "Comma-separated model ids (S1..S4, HYBRID, PER_REQUEST)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*run_cmd) {
    if (*seed_opt) run.seed = seed;
    if (*duration_opt) run.duration_s = duration;
    run.trace = !no_trace;
    return cmd_run(run, std::cout, std::cerr);
  }
  if (*conf_cmd) {
    if (*window_opt) conf.pairing_window_ms = window;
    return cmd_conformance(conf, std::cout, std::cerr);
  }
  std::vector<std::string> models;
  std::size_t pos = 0;
  while (pos < model_list.size()) {
    auto end = model_list.find(',', pos);
    if (end == std::string::npos) end = model_list.size();
    if (end > pos) models.push_back(model_list.substr(pos, end - pos));
    pos = end + 1;
  }
  return cmd_compare(compare_scenario, models, std::cout, std::cerr);
}

}  // namespace d2d::cli
