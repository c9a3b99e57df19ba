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

#include "oshi/measure/stats.hpp"

#include <algorithm>
#include <cmath>

#include "oshi/common/error.hpp"

namespace oshi::measure {

using nlohmann::json;

namespace {

// Lets packets still in flight when a flow stops land before the next run.
constexpr SimTime kDrain = std::chrono::milliseconds(100);

void check_options(const UdpExperimentOptions& o) {
  if (o.runs < 1) throw Error(Errc::InvalidArgument, "runs must be >= 1");
  if (o.samples < 1) throw Error(Errc::InvalidArgument, "samples must be >= 1");
  if (o.discard < 0 || o.discard >= o.samples) {
    throw Error(Errc::InvalidArgument, "discard must leave at least one sample");
  }
  if (o.interval <= SimTime::zero()) throw Error(Errc::InvalidArgument, "interval must be > 0");
}

}  // namespace

RunStats run_udp_experiment(topo::Deployment& d, const TrafficSpec& spec, const CostModel& model,
                            const UdpExperimentOptions& options) {
  validate(spec);
  if (spec.kind != TrafficKind::UdpFlow) {
    throw Error(Errc::InvalidArgument, "load experiments need a udp-flow spec");
  }
  check_options(options);

  std::vector<std::string> nodes;
  if (options.nodes) {
    nodes = *options.nodes;
    for (const auto& n : nodes) (void)d.node(n);  // throws UnknownNode
  } else {
    for (const auto& n : d.doc().nodes) nodes.push_back(n.id);
  }
  check_path(d, spec);

  const double secs = to_seconds(options.interval);
  RunStats stats;
  for (int r = 0; r < options.runs; ++r) {
    RunResult run;
    std::vector<double> prev;
    for (const auto& n : nodes) prev.push_back(d.node(n).meter().units(model));
    std::vector<double> kept(nodes.size(), 0.0);

    const SimTime t0 = d.now();
    const auto flow = start_flow(d, spec, options.seed + static_cast<std::uint64_t>(r),
                                 options.jitter);
    for (int s = 1; s <= options.samples; ++s) {
      d.sim().run_until(t0 + s * options.interval);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double u = d.node(nodes[i]).meter().units(model);
        const double cpu = (u - prev[i]) / secs;
        prev[i] = u;
        run.samples.push_back(Sample{nodes[i], s * secs, cpu});
        if (s > options.discard) kept[i] += cpu;
      }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      run.load[nodes[i]] = kept[i] / (options.samples - options.discard);
    }
    d.sim().run_until(std::max(d.now(), t0 + spec.duration) + kDrain);
    stats.runs.push_back(std::move(run));
  }
  summarize(stats);
  return stats;
}

void summarize(RunStats& stats) {
  stats.avg.clear();
  stats.dev.clear();
  std::map<std::string, std::vector<double>> per_node;
  for (const auto& run : stats.runs) {
    for (const auto& [node, load] : run.load) per_node[node].push_back(load);
  }
  for (const auto& [node, xs] : per_node) {
    double sum = 0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double sq = 0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    stats.avg[node] = mean;
    stats.dev[node] = xs.size() > 1 ? std::sqrt(sq / static_cast<double>(xs.size() - 1)) : 0.0;
  }
}

json export_stats(const RunStats& stats) {
  json runs = json::array();
  for (const auto& run : stats.runs) {
    json samples = json::array();
    for (const auto& s : run.samples) {
      samples.push_back(json{{"node", s.node}, {"t", s.t}, {"cpu", s.cpu}});
    }
    runs.push_back(json{{"samples", std::move(samples)}, {"load", run.load}});
  }
  return json{{"runs", std::move(runs)}, {"avg", stats.avg}, {"dev", stats.dev}};
}

RunStats import_stats(const json& doc) {
  try {
    RunStats stats;
    for (const auto& r : doc.at("runs")) {
      RunResult run;
      for (const auto& s : r.at("samples")) {
        run.samples.push_back(Sample{s.at("node").get<std::string>(), s.at("t").get<double>(),
                                     s.at("cpu").get<double>()});
      }
      run.load = r.at("load").get<std::map<std::string, double>>();
      stats.runs.push_back(std::move(run));
    }
    stats.avg = doc.at("avg").get<std::map<std::string, double>>();
    stats.dev = doc.at("dev").get<std::map<std::string, double>>();
    return stats;
  } catch (const json::exception& e) {
    throw Error(Errc::Schema, std::string("malformed stats document: ") + e.what());
  }
}

}  // namespace oshi::measure
