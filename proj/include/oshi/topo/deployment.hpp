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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/ctrl/controller.hpp"
#include "oshi/node/ip_node.hpp"
#include "oshi/node/oshi_node.hpp"
#include "oshi/sim/network.hpp"
#include "oshi/sim/simulator.hpp"
#include "oshi/topo/topology.hpp"

namespace oshi::topo {

struct DeployOptions {
  std::uint64_t seed = 1;
  routing::Timers timers;
  ctrl::ControllerConfig controller;
  /// Budget for routing convergence plus controller discovery.
  SimTime converge_limit = std::chrono::seconds(180);
  bool log_events = true;
};

struct Reachability {
  std::size_t pairs = 0;
  std::size_t reached = 0;
  std::vector<std::pair<std::string, std::string>> failures;
  double ratio() const { return pairs == 0 ? 1.0 : static_cast<double>(reached) / pairs; }
};

/// A deployed, running simulation of a topology document. Every node is
/// configured from the document alone (addresses, routing, tunnels,
/// controller, customer routes); the handle is the only way to mutate it.
class Deployment {
 public:
  /// Builds, starts and converges the network, then pushes the declared
  /// VLLs and waits until each is Active. Throws Schema for an invalid
  /// document, Timeout when convergence or a push does not complete, and
  /// propagates node bootstrap errors with the node id prefixed.
  static std::unique_ptr<Deployment> deploy(const TopologyDoc& doc, DeployOptions options = {});

  Deployment(const Deployment&) = delete;
  Deployment& operator=(const Deployment&) = delete;

  sim::Simulator& sim() { return sim_; }
  const sim::Simulator& sim() const { return sim_; }
  sim::Network& network() { return network_; }
  const sim::Network& network() const { return network_; }
  SimTime now() const { return sim_.now(); }
  const TopologyDoc& doc() const { return doc_; }
  const AddressPlan& plan() const { return plan_; }
  const DeployOptions& options() const { return options_; }
  /// Convergence time recorded by deploy().
  SimTime deploy_time() const { return deploy_time_; }

  /// Throws UnknownNode.
  node::IpNode& node(const std::string& id);
  const node::IpNode& node(const std::string& id) const;
  /// Nullptr unless the node is an OSHI node.
  node::OshiNode* oshi(const std::string& id);
  const node::OshiNode* oshi(const std::string& id) const;
  node::PlainRouter* router(const std::string& id);
  ctrl::Controller& controller();
  const ctrl::Controller& controller() const;
  net::Dpid dpid(const std::string& node) const;
  const std::string& node_of(net::Dpid dpid) const;

  /// Routing: no daemon busy, every up interface has an Up neighbor, and
  /// link-state databases agree within each connected component.
  bool routing_converged() const;
  /// Controller: every OSHI switch registered and the discovered links
  /// equal the up OSHI-OSHI adjacency.
  bool discovery_complete() const;
  /// OSHI-OSHI links that are up, as the controller should see them.
  std::set<ctrl::ViewLink> expected_adjacency() const;
  /// Runs until routing_converged() and discovery_complete(); returns
  /// whether that happened within `limit`.
  bool converge(SimTime limit = std::chrono::seconds(60));

  /// Echo from src's loopback to dst's loopback; runs up to `timeout`.
  bool ping(const std::string& src, const std::string& dst,
            SimTime timeout = std::chrono::seconds(2));
  /// All ordered pairs among `nodes` (all nodes when empty), pinged in
  /// parallel.
  Reachability reachability(const std::vector<std::string>& nodes = {},
                            SimTime timeout = std::chrono::seconds(3));

  /// Changes a link's state. Throws UnknownLink. Runs the simulation until
  /// routing reconverges (or `settle` passes) and returns the elapsed time.
  SimTime set_link_state(const std::string& link, bool up,
                         SimTime settle = std::chrono::seconds(60));
  bool link_up(const std::string& link) const;

  /// Pushes a VLL and runs until every switch confirmed. Throws what
  /// push_vll throws, or the switch's error when a rule was rejected.
  ctrl::VllDescriptor push_vll(const ctrl::VllRequest& request,
                               SimTime timeout = std::chrono::seconds(10));
  /// Throws UnknownVll.
  void delete_vll(const std::string& id, SimTime timeout = std::chrono::seconds(10));
  /// Sends one rule and waits for the switch's reply.
  ctrl::FlowModResult static_flow_push(net::Dpid dpid, const flow::FlowEntry& entry,
                                       SimTime timeout = std::chrono::seconds(10));
  ctrl::Route get_route(const std::string& src, const std::string& dst) const;

  /// Sends a wire out of (node, port) as if that node had emitted it.
  void inject(const std::string& node, net::PortId port, sim::Wire wire);

  /// {"nodes":[...], "links":[...], "discovered":[...]}.
  nlohmann::json topology_json() const;
  /// Per-node counters and load (cost units per simulated second so far).
  nlohmann::json stats_json() const;
  const std::vector<std::string>& event_log() const { return network_.event_log(); }

  /// Fresh identifier for pings, flows and other per-deployment tags.
  std::uint64_t allocate_id() { return next_ping_++; }

 private:
  Deployment(TopologyDoc doc, DeployOptions options);
  void build();
  node::NodeConfig node_config(const NodeDecl& decl, std::size_t index) const;

  TopologyDoc doc_;
  DeployOptions options_;
  AddressPlan plan_;
  sim::Simulator sim_;
  sim::Network network_;
  std::map<std::string, sim::NodeIndex> index_;
  std::map<std::string, sim::LinkIndex> links_;
  std::map<std::uint64_t, std::string> dpids_;
  std::string controller_node_;
  SimTime deploy_time_{};
  std::uint64_t next_ping_ = 1;
};

}  // namespace oshi::topo
