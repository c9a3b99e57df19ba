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

#include "oshi/sim/simulator.hpp"

#include <algorithm>

namespace oshi::sim {

void Simulator::schedule_at(SimTime at, Action fn) {
  heap_.push_back(Event{std::max(at, now_), next_seq_++, std::move(fn)});
  std::push_heap(heap_.begin(), heap_.end(), later);
}

bool Simulator::step() {
  if (heap_.empty()) return false;
  std::pop_heap(heap_.begin(), heap_.end(), later);
  Event ev = std::move(heap_.back());
  heap_.pop_back();
  now_ = ev.at;
  ++executed_;
  ev.fn();
  return true;
}

void Simulator::run_until(SimTime t) {
  while (!heap_.empty() && heap_.front().at <= t) step();
  if (t > now_) now_ = t;
}

bool Simulator::run_while_not(const std::function<bool()>& done, SimTime limit, SimTime poll) {
  const SimTime end = now_ + limit;
  while (!done()) {
    if (now_ >= end) return false;
    run_until(std::min(end, now_ + poll));
  }
  return true;
}

}  // namespace oshi::sim
