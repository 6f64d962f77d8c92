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

#include "d2d/sim/engine.hpp"

#include "d2d/core/error.hpp"

namespace d2d::sim {

Engine::Engine(std::uint64_t seed) : rng_(seed) {}

Event Engine::schedule(Action action, SimTime at) {
  if (at < now_) {
    throw SimError("past-event", format_time(at) + " < now " + format_time(now_));
  }
  std::uint32_t index;
  if (!free_.empty()) {
    index = free_.back();
    free_.pop_back();
    actions_[index] = std::move(action);
  } else {
    index = static_cast<std::uint32_t>(actions_.size());
    actions_.push_back(std::move(action));
  }
  const Event ev{at, next_seq_++};
  queue_.push(Slot{ev.at, ev.seq, index});
  return ev;
}

Trace Engine::run_until(SimTime t_end) {
  while (!queue_.empty() && queue_.top().at <= t_end) {
    const Slot slot = queue_.top();
    queue_.pop();
    now_ = slot.at;
    Action action = std::move(actions_[slot.index]);
    free_.push_back(slot.index);
    ++executed_;
    dispatch(action);
  }
  if (t_end > now_) now_ = t_end;
  return std::exchange(trace_, {});
}

void Engine::dispatch(Action& action) {
  std::visit(
      [this](auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, Deliver>) {
          if (handlers_.deliver) handlers_.deliver(a);
        } else if constexpr (std::is_same_v<A, Fire>) {
          auto it = live_timers_.find({a.timer.owner, a.timer.tag});
          if (it == live_timers_.end() || it->second != a.timer.generation) return;
          live_timers_.erase(it);
          record(TraceEvent::TimerFire, a.timer.owner, a.timer.tag);
          if (handlers_.timer) handlers_.timer(a.timer);
        } else if constexpr (std::is_same_v<A, MobilityStep>) {
          if (handlers_.mobility) handlers_.mobility();
        } else {
          if (a.run) a.run();
        }
      },
      action);
}

TimerHandle Engine::set_timer(const EntityId& owner, std::string tag, SimTime duration) {
  if (duration.count() <= 0) throw SimError("invalid-duration", "timer " + tag);
  TimerHandle h{owner, std::move(tag), now_ + duration, ++timer_generation_};
  live_timers_[{h.owner, h.tag}] = h.generation;
  record(TraceEvent::TimerSet, owner, h.tag + " expires=" + format_time(h.expires));
  schedule(Fire{h}, h.expires);
  return h;
}

void Engine::cancel_timer(const TimerHandle& handle) {
  auto it = live_timers_.find({handle.owner, handle.tag});
  if (it != live_timers_.end() && it->second == handle.generation) live_timers_.erase(it);
}

bool Engine::timer_live(const TimerHandle& handle) const {
  auto it = live_timers_.find({handle.owner, handle.tag});
  return it != live_timers_.end() && it->second == handle.generation;
}

void Engine::record(TraceEvent event, const EntityId& entity, std::string detail) {
  if (!tracing_) return;
  trace_.push_back(TraceRecord{now_, event, entity, std::move(detail)});
}

std::uint64_t Engine::uniform(std::uint64_t bound) {
  if (bound == 0) return 0;
  return rng_() % (bound + 1);
}

}  // namespace d2d::sim
