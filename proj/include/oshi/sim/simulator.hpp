/*
 * Copyright 2026 The oshi-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "oshi/common/time.hpp"

namespace oshi::sim {

/// Discrete-event loop. Events at equal times run in scheduling order, so a
/// run is a pure function of its inputs.
class Simulator {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }

  void schedule(SimTime delay, Action fn) { schedule_at(now_ + delay, std::move(fn)); }
  /// Times in the past are clamped to now.
  void schedule_at(SimTime at, Action fn);

  /// Runs the earliest event; false when the queue is empty.
  bool step();
  /// Runs every event with time <= t, then advances the clock to t.
  void run_until(SimTime t);
  void run_for(SimTime d) { run_until(now_ + d); }
  /// Advances in `poll` increments until `done()` holds or `limit` passes.
  /// Returns whether `done()` held.
  bool run_while_not(const std::function<bool()>& done, SimTime limit, SimTime poll);

  std::size_t pending() const { return heap_.size(); }
  std::uint64_t executed() const { return executed_; }

 private:
  struct Event {
    SimTime at;
    std::uint64_t seq;
    Action fn;
  };
  static bool later(const Event& a, const Event& b) {
    return a.at != b.at ? a.at > b.at : a.seq > b.seq;
  }

  SimTime now_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t executed_ = 0;
  std::vector<Event> heap_;
};

}  // namespace oshi::sim
