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

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "d2d/core/message.hpp"
#include "d2d/core/trace.hpp"

namespace d2d::sim {

struct TimerHandle {
  EntityId owner;
  std::string tag;
  SimTime expires{0};
  std::uint64_t generation = 0;
};

// Delivery of `msg` to entity `to` (differs from msg.dst for broadcasts).
struct Deliver {
  Message msg;
  EntityId to;
};

struct Fire {
  TimerHandle timer;
};

struct MobilityStep {};

struct ScenarioAction {
  std::function<void()> run;
};

using Action = std::variant<Deliver, Fire, MobilityStep, ScenarioAction>;

// Identity of a scheduled event; (at, seq) is a strict total order.
struct Event {
  SimTime at{0};
  std::uint64_t seq = 0;
};

// Single-threaded discrete-event scheduler. Events at equal times run in
// scheduling order. Every observable effect is appended to the trace buffer,
// which run_until hands back to the caller.
class Engine {
 public:
  struct Handlers {
    std::function<void(Deliver&)> deliver;
    std::function<void(const TimerHandle&)> timer;
    std::function<void()> mobility;
  };

  explicit Engine(std::uint64_t seed = 0);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  SimTime now() const noexcept { return now_; }

  // Throws SimError("past-event") if at < now().
  Event schedule(Action action, SimTime at);

  // Executes every pending event with at <= t_end, leaves now() at t_end (or
  // later if already past) and returns the trace records produced since the
  // previous call.
  Trace run_until(SimTime t_end);

  // Throws SimError("invalid-duration") unless duration > 0. Re-setting a
  // live (owner, tag) timer replaces it.
  TimerHandle set_timer(const EntityId& owner, std::string tag, SimTime duration);
  // Idempotent; cancelling an expired or replaced handle is a no-op.
  void cancel_timer(const TimerHandle& handle);
  bool timer_live(const TimerHandle& handle) const;

  void record(TraceEvent event, const EntityId& entity, std::string detail);
  void set_tracing(bool enabled) noexcept { tracing_ = enabled; }
  bool tracing() const noexcept { return tracing_; }

  void set_handlers(Handlers handlers) { handlers_ = std::move(handlers); }

  // The only randomness source of a run; consumed in event order.
  std::mt19937_64& rng() noexcept { return rng_; }
  // Uniform integer in [0, bound]; platform independent.
  std::uint64_t uniform(std::uint64_t bound);

  std::size_t pending() const noexcept { return queue_.size(); }
  std::uint64_t executed() const noexcept { return executed_; }

 private:
  struct Slot {
    SimTime at;
    std::uint64_t seq;
    std::uint32_t index;
    bool operator>(const Slot& o) const noexcept {
      return at != o.at ? at > o.at : seq > o.seq;
    }
  };

  void dispatch(Action& action);

  SimTime now_{0};
  std::uint64_t next_seq_ = 0;
  std::uint64_t executed_ = 0;
  std::priority_queue<Slot, std::vector<Slot>, std::greater<>> queue_;
  std::vector<Action> actions_;
  std::vector<std::uint32_t> free_;
  std::map<std::pair<EntityId, std::string>, std::uint64_t> live_timers_;
  std::uint64_t timer_generation_ = 0;
  Trace trace_;
  bool tracing_ = true;
  Handlers handlers_;
  std::mt19937_64 rng_;
};

}  // namespace d2d::sim
