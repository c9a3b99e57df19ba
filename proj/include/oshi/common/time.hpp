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

#include <chrono>
#include <cmath>

namespace oshi {

/// Simulated time since the start of a run.
using SimTime = std::chrono::nanoseconds;

using namespace std::chrono_literals;

inline SimTime from_seconds(double s) {
  return SimTime(static_cast<SimTime::rep>(std::llround(s * 1e9)));
}

inline double to_seconds(SimTime t) { return static_cast<double>(t.count()) * 1e-9; }

}  // namespace oshi
