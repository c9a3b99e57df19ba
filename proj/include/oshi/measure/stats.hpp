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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/measure/cost_model.hpp"
#include "oshi/measure/traffic.hpp"

namespace oshi::measure {

/// One CPU poll: load of `node` over the interval ending at `t` seconds
/// after the run started, in units of node capacity.
struct Sample {
  std::string node;
  double t = 0;
  double cpu = 0;
  friend bool operator==(const Sample&, const Sample&) = default;
};

struct RunResult {
  std::vector<Sample> samples;
  /// Per node: mean of the samples kept after the warm-up discard.
  std::map<std::string, double> load;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct RunStats {
  std::vector<RunResult> runs;
  std::map<std::string, double> avg;
  /// Sample standard deviation (n - 1) of per-run loads; 0 for one run.
  std::map<std::string, double> dev;
  friend bool operator==(const RunStats&, const RunStats&) = default;
};

struct UdpExperimentOptions {
  int runs = 20;
  int samples = 20;
  int discard = 10;
  SimTime interval = std::chrono::seconds(2);
  std::uint64_t seed = 1;
  /// Nodes to poll; nullopt polls every node of the deployment.
  std::optional<std::vector<std::string>> nodes;
  double jitter = 0.25;
};

/// Runs `options.runs` back-to-back flows of `spec` on `d`; run i seeds its
/// generator with seed + i. Each run polls every `interval`, keeps the
/// samples after the first `discard`, and averages them into a per-run
/// load. Throws InvalidArgument for a non-UDP spec or inconsistent options
/// and Unreachable when the destination cannot be reached.
RunStats run_udp_experiment(topo::Deployment& d, const TrafficSpec& spec, const CostModel& model,
                            const UdpExperimentOptions& options = {});

/// Fills avg and dev from the per-run loads.
void summarize(RunStats& stats);

/// {"runs":[{"load":{..},"samples":[{"cpu","node","t"}..]}..],"avg":{..},"dev":{..}}.
nlohmann::json export_stats(const RunStats& stats);
/// Inverse of export_stats. Throws Schema for a malformed document.
RunStats import_stats(const nlohmann::json& doc);

}  // namespace oshi::measure
