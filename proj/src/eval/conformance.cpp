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

#include "d2d/eval/conformance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "d2d/core/error.hpp"
#include "d2d/eval/simulation.hpp"

namespace d2d::eval {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

MessageKind kind_or_throw(std::string_view text, std::string_view line) {
  auto k = parse_message_kind(text);
  if (!k) throw SimError("invalid-vector", "unknown kind in: " + std::string(line));
  return *k;
}

std::string wire_key(const WireView& w) {
  return std::string(to_string(w.kind)) + " " + std::string(to_string(classify(w.src))) + "->" +
         std::string(to_string(classify(w.dst)));
}

}  // namespace

std::string VectorStep::key() const {
  return std::string(to_string(kind)) + " " + src + "->" + dst;
}

ConformanceVector parse_vector(std::string_view text, std::string name) {
  ConformanceVector v;
  v.name = std::move(name);
  bool have_from = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    std::string comment;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      comment = std::string(trim(line.substr(hash + 1)));
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with("scenario:")) {
      v.scenario = std::string(trim(line.substr(9)));
    } else if (line.starts_with("from:")) {
      v.from = kind_or_throw(trim(line.substr(5)), raw);
      have_from = true;
    } else {
      const auto space = line.find(' ');
      const auto arrow = line.find("->");
      if (space == std::string_view::npos || arrow == std::string_view::npos || arrow < space) {
        throw SimError("invalid-vector", "bad step: " + raw);
      }
      VectorStep s;
      s.kind = kind_or_throw(line.substr(0, space), raw);
      s.src = std::string(trim(line.substr(space + 1, arrow - space - 1)));
      s.dst = std::string(trim(line.substr(arrow + 2)));
      s.comment = std::move(comment);
      if (s.src.empty() || s.dst.empty()) throw SimError("invalid-vector", "bad step: " + raw);
      v.steps.push_back(std::move(s));
    }
  }
  if (v.scenario.empty()) throw SimError("invalid-vector", "missing scenario line");
  if (!have_from) throw SimError("invalid-vector", "missing from line");
  if (v.steps.empty()) throw SimError("invalid-vector", "no steps");
  return v;
}

ConformanceVector load_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SimError("missing-vectors", path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ConformanceVector v = parse_vector(buf.str(), path.stem().string());
  if (v.scenario.is_relative()) v.scenario = path.parent_path() / v.scenario;
  return v;
}

std::vector<ConformanceVector> load_vectors(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw SimError("missing-vectors", dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".vec") files.push_back(entry.path());
  }
  if (files.empty()) throw SimError("missing-vectors", dir.string());
  std::sort(files.begin(), files.end());
  std::vector<ConformanceVector> out;
  for (const auto& f : files) out.push_back(load_vector_file(f));
  return out;
}

std::vector<std::string> observed_sequence(std::span<const TraceRecord> trace, MessageKind from,
                                           std::size_t count) {
  std::vector<std::string> out;
  bool started = false;
  for (const auto& r : trace) {
    if (out.size() == count) break;
    if (r.event != TraceEvent::Send) continue;
    auto w = parse_wire(r.detail);
    if (!w) continue;
    if (!started && w->kind != from) continue;
    started = true;
    out.push_back(wire_key(*w));
  }
  return out;
}

ConformanceResult check_vector(const ConformanceVector& vector, const Scenario& scenario) {
  const Trace trace = simulate(scenario);
  const auto seen = observed_sequence(trace, vector.from, vector.steps.size());
  ConformanceResult r;
  r.name = vector.name;
  for (std::size_t i = 0; i < vector.steps.size(); ++i) {
    const std::string want = vector.steps[i].key();
    const std::string got = i < seen.size() ? seen[i] : "<end>";
    if (want != got) {
      r.divergence = i;
      r.expected = want;
      r.observed = got;
      return r;
    }
  }
  r.passed = true;
  return r;
}

ConformanceResult run_vector(const ConformanceVector& vector, const ScenarioOverrides& overrides) {
  Scenario s = load_scenario_file(vector.scenario);
  if (overrides.pairing_window) s.timers.pairing_window = *overrides.pairing_window;
  return check_vector(vector, s);
}

}  // namespace d2d::eval
