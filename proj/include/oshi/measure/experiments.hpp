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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/measure/cost_model.hpp"
#include "oshi/measure/stats.hpp"
#include "oshi/topo/topology.hpp"

namespace oshi::measure {

/// VLAN id the experiments use for VLL traffic on customer ports.
inline constexpr std::uint16_t kExperimentVid = 100;

/// CE1 - PE1 - M - PE2 - CE2 where M is the measured node: a plain router
/// for the Router* profiles, otherwise a core OSHI node. The PE-M links
/// carry the profile's overlay, so M decapsulates and re-encapsulates every
/// packet. VLL profiles declare a VLL "exp" between the PE customer ports
/// tagged with kExperimentVid.
topo::TopologyDoc experiment_topology(Profile profile);
/// Id of M in experiment_topology(profile).
std::string measured_node(Profile profile);
bool is_vll_profile(Profile profile);

struct ThroughputSpec {
  std::string src;  // CE; empty: first CE of the document
  std::string dst;  // CE; empty: last CE of the document
  int packets = 1000;
  std::size_t size = 1500;  // IP datagram bytes
  /// Shared processing budget of the whole emulation, units/s.
  double budget = 1.0;
  std::uint16_t vid = kExperimentVid;
};

struct ThroughputResult {
  std::string src, dst;
  /// Data-class cost units per delivered packet summed over every non-CE
  /// node; CE costs are identical for both services and left out.
  double vll_cost = 0;
  double ip_cost = 0;
  double vll_pps = 0;
  double ip_pps = 0;
  double vll_mbps = 0;
  double ip_mbps = 0;
  std::vector<std::string> vll_path;
  nlohmann::json to_json() const;
};

/// Measures the per-packet cost of carrying `spec.packets` datagrams between
/// two CEs over IP and over a temporary tagged VLL, then converts each into
/// the rate a single shared budget sustains. Throws Unreachable when either
/// service does not deliver.
ThroughputResult run_throughput_experiment(topo::Deployment& d, const ThroughputSpec& spec,
                                           const CostModel& model);

struct ExperimentOptions {
  std::vector<double> rates{500, 1000, 1500, 2000, 2500};
  std::size_t size = 1000;
  SimTime duration = std::chrono::seconds(40);
  UdpExperimentOptions udp;
  CostModel model = kDefaultCostModel;
  /// Experiment d only; defaults to experiment_topology(OshiIpPlain).
  std::optional<topo::TopologyDoc> topology;
  ThroughputSpec throughput;
};

/// Profiles compared by experiment a, b or c; empty for d.
std::vector<Profile> experiment_profiles(char experiment);

/// Runs experiment a, b, c (UDP load per profile and rate) or d (shared
/// budget throughput). Throws InvalidArgument for any other letter.
nlohmann::json run_experiment(char experiment, const ExperimentOptions& options);

}  // namespace oshi::measure
