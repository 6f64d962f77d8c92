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

#include "d2d/eval/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "d2d/core/error.hpp"

namespace d2d::eval {
namespace {

using json = nlohmann::json;

// Typed access with error messages that name the offending field.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SimError("invalid-field", path_ + " must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  void only(std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : j_.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
        throw SimError("invalid-field", field(k.c_str()) + " is not recognized");
      }
    }
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& at(const char* key) const {
    if (!has(key)) throw SimError("invalid-field", field(key) + " is required");
    return j_.at(key);
  }

  std::string str(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) throw SimError("invalid-field", field(key) + " must be a string");
    return v.get<std::string>();
  }
  std::string str(const char* key, std::string def) const { return has(key) ? str(key) : def; }

  double num(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) throw SimError("invalid-field", field(key) + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SimError("invalid-field", field(key) + " must be finite");
    return d;
  }
  double num(const char* key, double def) const { return has(key) ? num(key) : def; }

  std::int64_t integer(const char* key, std::int64_t def) const {
    if (!has(key)) return def;
    const json& v = at(key);
    if (!v.is_number_integer()) throw SimError("invalid-field", field(key) + " must be an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(const char* key, bool def) const {
    if (!has(key)) return def;
    const json& v = at(key);
    if (!v.is_boolean()) throw SimError("invalid-field", field(key) + " must be a boolean");
    return v.get<bool>();
  }

  // Seconds or milliseconds to SimTime; negative values are rejected.
  SimTime duration(const char* key, double scale, SimTime def) const {
    if (!has(key)) return def;
    const double v = num(key);
    if (v < 0) throw SimError("invalid-duration", field(key) + " must be >= 0");
    return from_seconds(v * scale);
  }

  const json& array(const char* key) const {
    const json& v = at(key);
    if (!v.is_array()) throw SimError("invalid-field", field(key) + " must be an array");
    return v;
  }

  std::map<std::string, std::string> strings(const char* key) const {
    std::map<std::string, std::string> out;
    if (!has(key)) return out;
    const json& v = at(key);
    if (!v.is_object()) throw SimError("invalid-field", field(key) + " must be an object");
    for (const auto& [k, x] : v.items()) {
      if (!x.is_string()) throw SimError("invalid-field", field(key) + "." + k + " must be a string");
      out.emplace(k, x.get<std::string>());
    }
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

std::string indexed(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

sim::Position position(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw SimError("invalid-field", where + " must be [x, y]");
  }
  sim::Position p{v[0].get<double>(), v[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw SimError("invalid-field", where + " must be finite");
  }
  return p;
}

EntityId entity(const std::string& value, EntityClass expected, const std::string& where) {
  EntityId id{value};
  const bool clean = !value.empty() && value.find_first_of(" \t\r\n,()=#") == std::string::npos;
  if (!clean || classify(id) != expected) {
    throw SimError("invalid-id", where + " '" + value + "' must name a " +
                                     std::string(to_string(expected)));
  }
  return id;
}

Imsi imsi(const std::string& value, const std::string& where) {
  auto parsed = Imsi::parse(value);
  if (!parsed) throw SimError("invalid-field", where + " must be 15 digits");
  return *parsed;
}

void parse_subscribers(const Reader& root, Scenario& sc) {
  if (!root.has("subscribers")) return;
  IdCounter auto_ids{"d2d-"};
  std::set<std::string> imsis;
  std::set<D2DId> d2d_ids;
  const json& list = root.array("subscribers");
  // Generated ids skip every id given explicitly anywhere in the list.
  std::set<std::string> explicit_ids;
  for (const json& s : list) {
    if (s.is_object() && s.contains("d2d_id") && s["d2d_id"].is_string()) {
      explicit_ids.insert(s["d2d_id"].get<std::string>());
    }
  }
  const auto next_auto = [&] {
    std::string id = auto_ids.next();
    while (explicit_ids.contains(id)) id = auto_ids.next();
    return id;
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    Reader r(list[i], indexed("subscribers", i));
    r.only({"imsi", "d2d_id", "services"});
    SubscriberProfile p{imsi(r.str("imsi"), r.field("imsi")), {}, {}};
    if (!imsis.insert(p.imsi.str()).second) throw SimError("duplicate-imsi", p.imsi.str());
    p.d2d_id = D2DId{r.has("d2d_id") ? r.str("d2d_id") : next_auto()};
    if (p.d2d_id.empty()) throw SimError("invalid-id", r.field("d2d_id"));
    if (!d2d_ids.insert(p.d2d_id).second) throw SimError("duplicate-id", p.d2d_id.str());
    if (r.has("services")) {
      for (const json& s : r.array("services")) {
        if (!s.is_string() || s.get<std::string>().empty()) {
          throw SimError("invalid-field", r.field("services") + " entries must be strings");
        }
        p.authorized_services.insert(D2DAppId{s.get<std::string>()});
      }
    }
    sc.subscribers.push_back(std::move(p));
  }
}

void parse_cells(const Reader& root, Scenario& sc) {
  const json& list = root.array("cells");
  if (list.empty()) throw SimError("invalid-field", "cells must not be empty");
  for (std::size_t i = 0; i < list.size(); ++i) {
    Reader r(list[i], indexed("cells", i));
    r.only({"id", "position", "coverage_m", "d2d_radius_m", "capacity", "preload",
            "congestion_threshold", "pool_slots", "pool_period_ms"});
    CellDef c;
    c.id = entity(r.str("id"), EntityClass::Enb, r.field("id"));
    if (r.has("position")) c.position = position(r.at("position"), r.field("position"));
    c.d2d_radius_m = r.num("d2d_radius_m", 200.0);
    c.config.coverage_m = r.num("coverage_m", 1000.0);
    c.config.capacity = static_cast<int>(r.integer("capacity", 256));
    c.config.preload = static_cast<int>(r.integer("preload", 0));
    c.config.congestion_threshold = r.num("congestion_threshold", 0.8);
    c.config.pool_slots = static_cast<int>(r.integer("pool_slots", 16));
    c.config.pool_period = r.duration("pool_period_ms", 1e-3, 320ms);
    if (!(c.d2d_radius_m > 0)) throw SimError("invalid-field", r.field("d2d_radius_m") + " must be > 0");
    if (!(c.config.coverage_m > 0)) throw SimError("invalid-field", r.field("coverage_m") + " must be > 0");
    if (c.config.capacity <= 0) throw SimError("invalid-field", r.field("capacity") + " must be > 0");
    if (c.config.preload < 0 || c.config.preload > c.config.capacity) {
      throw SimError("invalid-field", r.field("preload") + " must be in [0, capacity]");
    }
    if (c.config.congestion_threshold < 0 || c.config.congestion_threshold > 1) {
      throw SimError("invalid-field", r.field("congestion_threshold") + " must be in [0, 1]");
    }
    if (c.config.pool_slots <= 0) throw SimError("invalid-field", r.field("pool_slots") + " must be > 0");
    if (c.config.pool_period.count() <= 0) {
      throw SimError("invalid-duration", r.field("pool_period_ms") + " must be > 0");
    }
    if (std::any_of(sc.cells.begin(), sc.cells.end(), [&](const CellDef& o) { return o.id == c.id; })) {
      throw SimError("duplicate-id", c.id.str());
    }
    sc.cells.push_back(std::move(c));
  }
}

void parse_ues(const Reader& root, Scenario& sc) {
  const json& list = root.array("ues");
  std::set<std::string> imsis;
  for (std::size_t i = 0; i < list.size(); ++i) {
    Reader r(list[i], indexed("ues", i));
    r.only({"id", "imsi", "cell", "position", "waypoints", "d2d", "qos"});
    UeDef u{entity(r.str("id"), EntityClass::Ue, r.field("id")),
            imsi(r.str("imsi"), r.field("imsi")), EntityId{r.str("cell")}, {}, {}, true, 9};
    if (!imsis.insert(u.imsi.str()).second) throw SimError("duplicate-imsi", u.imsi.str());
    if (std::none_of(sc.cells.begin(), sc.cells.end(), [&](const CellDef& c) { return c.id == u.cell; })) {
      throw SimError("unknown-cell", r.field("cell") + " '" + u.cell.str() + "'");
    }
    if (r.has("position")) u.position = position(r.at("position"), r.field("position"));
    if (r.has("waypoints")) {
      const json& wps = r.array("waypoints");
      for (std::size_t k = 0; k < wps.size(); ++k) {
        const json& w = wps[k];
        const std::string where = r.field("waypoints") + "[" + std::to_string(k) + "]";
        if (!w.is_array() || w.size() != 3 || !w[0].is_number() || !w[1].is_number() ||
            !w[2].is_number()) {
          throw SimError("invalid-field", where + " must be [t_s, x, y]");
        }
        const double t = w[0].get<double>();
        if (!(t >= 0)) throw SimError("invalid-duration", where + " time must be >= 0");
        u.waypoints.push_back({from_seconds(t), position(json::array({w[1], w[2]}), where)});
      }
      if (!std::is_sorted(u.waypoints.begin(), u.waypoints.end(),
                          [](const auto& a, const auto& b) { return a.at < b.at; })) {
        throw SimError("invalid-field", r.field("waypoints") + " must be sorted by time");
      }
    }
    u.d2d = r.boolean("d2d", true);
    u.qos = static_cast<int>(r.integer("qos", 9));
    if (!valid_qos_class(u.qos)) throw SimError("invalid-field", r.field("qos") + " must be 1..9");
    if (std::any_of(sc.ues.begin(), sc.ues.end(), [&](const UeDef& o) { return o.id == u.id; })) {
      throw SimError("duplicate-id", u.id.str());
    }
    sc.ues.push_back(std::move(u));
  }
}

void parse_actions(const Reader& root, Scenario& sc) {
  if (!root.has("actions")) return;
  const json& list = root.array("actions");
  const auto known_ue = [&](const EntityId& id) {
    return std::any_of(sc.ues.begin(), sc.ues.end(), [&](const UeDef& u) { return u.id == id; });
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    Reader r(list[i], indexed("actions", i));
    ActionDef a;
    const double at = r.num("at_s");
    if (at < 0) throw SimError("invalid-duration", r.field("at_s") + " must be >= 0");
    a.at = from_seconds(at);
    a.ue = EntityId{r.str("ue")};
    if (!known_ue(a.ue)) throw SimError("unknown-ue", r.field("ue") + " '" + a.ue.str() + "'");
    const std::string what = r.str("do");
    if (what == "power_on" || what == "stop_discovery") {
      r.only({"at_s", "ue", "do"});
      a.kind = what == "power_on" ? ActionKind::PowerOn : ActionKind::StopDiscovery;
    } else if (what == "start_discovery") {
      r.only({"at_s", "ue", "do", "app", "model", "role", "attrs", "filter"});
      a.kind = ActionKind::StartDiscovery;
      a.discovery.app = D2DAppId{r.str("app")};
      auto model = ue::parse_model(r.str("model", "A"));
      if (!model) throw SimError("invalid-field", r.field("model") + " must be A or B");
      a.discovery.model = *model;
      const char* def_role = *model == ue::DiscoveryModel::A ? "announcing" : "discoverer";
      auto role = ue::parse_role(r.str("role", def_role));
      if (!role) throw SimError("invalid-field", r.field("role"));
      a.discovery.role = *role;
      a.discovery.attrs = r.strings("attrs");
      a.discovery.filter = r.strings("filter");
      if (a.discovery.app.empty()) throw SimError("invalid-field", r.field("app") + " must not be empty");
      if (!a.discovery.consistent()) {
        throw SimError("invalid-field", r.field("role") + " does not belong to model " + r.str("model", "A"));
      }
    } else if (what == "initiate_session" || what == "send_flow") {
      a.peer = EntityId{r.str("peer")};
      if (!known_ue(a.peer)) throw SimError("unknown-ue", r.field("peer") + " '" + a.peer.str() + "'");
      if (what == "initiate_session") {
        r.only({"at_s", "ue", "do", "peer"});
        a.kind = ActionKind::InitiateSession;
      } else {
        r.only({"at_s", "ue", "do", "peer", "packets", "interval_ms", "size"});
        a.kind = ActionKind::SendFlow;
        const std::int64_t packets = r.integer("packets", 1);
        const std::int64_t size = r.integer("size", 64);
        if (packets < 0) throw SimError("invalid-field", r.field("packets") + " must be >= 0");
        if (size <= 0) throw SimError("invalid-field", r.field("size") + " must be > 0");
        a.packets = static_cast<std::uint64_t>(packets);
        a.size = static_cast<std::size_t>(size);
        a.interval = r.duration("interval_ms", 1e-3, 10ms);
        if (a.packets > 1 && a.interval.count() <= 0) {
          throw SimError("invalid-duration", r.field("interval_ms") + " must be > 0");
        }
      }
    } else {
      throw SimError("invalid-field", r.field("do") + " '" + what + "' is not an action");
    }
    sc.actions.push_back(std::move(a));
  }
  std::stable_sort(sc.actions.begin(), sc.actions.end(),
                   [](const ActionDef& x, const ActionDef& y) { return x.at < y.at; });
}

void parse_timers(const Reader& root, Scenario& sc) {
  if (!root.has("timers")) return;
  Reader r(root.at("timers"), "timers");
  r.only({"authz_validity_s", "temp_id_ttl_s", "pairing_window_ms", "mobility_epoch_ms",
          "retry_backoff_s", "max_retries"});
  Timers& t = sc.timers;
  t.authz_validity = r.duration("authz_validity_s", 1.0, t.authz_validity);
  t.temp_id_ttl = r.duration("temp_id_ttl_s", 1.0, t.temp_id_ttl);
  t.pairing_window = r.duration("pairing_window_ms", 1e-3, t.pairing_window);
  t.mobility_epoch = r.duration("mobility_epoch_ms", 1e-3, t.mobility_epoch);
  t.retry_backoff = r.duration("retry_backoff_s", 1.0, t.retry_backoff);
  t.max_retries = static_cast<int>(r.integer("max_retries", t.max_retries));
  if (t.temp_id_ttl.count() <= 0) throw SimError("invalid-duration", "timers.temp_id_ttl_s must be > 0");
  if (t.mobility_epoch.count() <= 0) {
    throw SimError("invalid-duration", "timers.mobility_epoch_ms must be > 0");
  }
  if (t.retry_backoff.count() <= 0) throw SimError("invalid-duration", "timers.retry_backoff_s must be > 0");
  if (t.max_retries < 0) throw SimError("invalid-field", "timers.max_retries must be >= 0");
}

void parse_links(const Reader& root, Scenario& sc) {
  if (!root.has("links")) return;
  Reader r(root.at("links"), "links");
  r.only({"ue_enb_ms", "enb_mme_ms", "mme_hss_ms", "mme_pgw_ms", "ue_ue_ms", "enb_pgw_ms",
          "ue_prose_ms", "prose_hss_ms", "jitter_ms"});
  sim::LinkProfile& l = sc.links;
  const std::pair<const char*, SimTime*> fields[] = {
      {"ue_enb_ms", &l.ue_enb},     {"enb_mme_ms", &l.enb_mme},   {"mme_hss_ms", &l.mme_hss},
      {"mme_pgw_ms", &l.mme_pgw},   {"ue_ue_ms", &l.ue_ue},       {"enb_pgw_ms", &l.enb_pgw},
      {"ue_prose_ms", &l.ue_prose}, {"prose_hss_ms", &l.prose_hss}};
  for (auto [key, slot] : fields) {
    *slot = r.duration(key, 1e-3, *slot);
    if (slot->count() <= 0) throw SimError("invalid-duration", r.field(key) + " must be > 0");
  }
  l.jitter = r.duration("jitter_ms", 1e-3, l.jitter);
}

void parse_options(const Reader& root, Scenario& sc) {
  if (!root.has("options")) return;
  Reader r(root.at("options"), "options");
  r.only({"authz_push", "discovery", "action_jitter_ms"});
  const std::string push = r.str("authz_push", "piggyback");
  if (push == "piggyback") {
    sc.options.authz_push = epc::AuthzPush::Piggyback;
  } else if (push == "separate") {
    sc.options.authz_push = epc::AuthzPush::Separate;
  } else {
    throw SimError("invalid-field", "options.authz_push must be piggyback or separate");
  }
  const std::string via = r.str("discovery", "enb");
  if (via == "enb") {
    sc.options.discovery = DiscoveryVia::Enb;
  } else if (via == "prose_server") {
    sc.options.discovery = DiscoveryVia::ProseServer;
  } else {
    throw SimError("invalid-field", "options.discovery must be enb or prose_server");
  }
  sc.options.action_jitter = r.duration("action_jitter_ms", 1e-3, 0ms);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SimError("invalid-document", e.what());
  }
  Reader root(doc, "");
  root.only({"version", "seed", "duration_s", "subscribers", "cells", "ues", "actions", "timers",
             "links", "options", "faults"});
  if (root.integer("version", kScenarioVersion) != kScenarioVersion) {
    throw SimError("invalid-field", "version must be 1");
  }
  Scenario sc;
  const std::int64_t seed = root.integer("seed", 1);
  if (seed < 0) throw SimError("invalid-field", "seed must be >= 0");
  sc.seed = static_cast<std::uint64_t>(seed);
  const double duration = root.num("duration_s");
  if (!(duration > 0)) throw SimError("invalid-duration", "duration_s must be > 0");
  sc.duration = from_seconds(duration);

  parse_subscribers(root, sc);
  parse_cells(root, sc);
  parse_ues(root, sc);
  parse_actions(root, sc);
  parse_timers(root, sc);
  parse_links(root, sc);
  parse_options(root, sc);
  if (root.has("faults")) {
    for (const json& f : root.array("faults")) {
      if (!f.is_string() || !sc.faults.enable(f.get<std::string>())) {
        throw SimError("unknown-fault", f.dump());
      }
    }
  }
  return sc;
}

Scenario load_scenario(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SimError("unreadable-scenario", path.string());
  return load_scenario(in);
}

}  // namespace d2d::eval
