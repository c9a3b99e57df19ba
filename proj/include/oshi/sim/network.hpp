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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oshi/measure/cost_model.hpp"
#include "oshi/net/frame.hpp"
#include "oshi/net/port.hpp"
#include "oshi/overlay/vxlan.hpp"
#include "oshi/sim/simulator.hpp"

namespace oshi::sim {

/// What travels on a link: a plain frame, or a tunnel datagram on overlay links.
using Wire = std::variant<net::EthernetFrame, overlay::VxlanDatagram>;

std::size_t wire_size(const Wire& w);

using NodeIndex = std::size_t;
using LinkIndex = std::size_t;

class Network;

/// A device attached to the network. Ports are numbered per node.
class Node {
 public:
  explicit Node(std::string id) : id_(std::move(id)) {}
  virtual ~Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  const std::string& id() const { return id_; }
  NodeIndex index() const { return index_; }

  virtual void start() {}
  virtual void receive(net::PortId port, Wire wire) = 0;
  /// Carrier change on a port (link admin state).
  virtual void carrier(net::PortId /*port*/, bool /*up*/) {}

  measure::CpuMeter& meter() { return meter_; }
  const measure::CpuMeter& meter() const { return meter_; }

 protected:
  void send(net::PortId port, Wire wire);
  Simulator& sim();
  const Simulator& sim() const;
  Network& network() { return *network_; }
  void log(const std::string& message);

 private:
  friend class Network;
  std::string id_;
  Network* network_ = nullptr;
  NodeIndex index_ = 0;
  measure::CpuMeter meter_;
};

struct LinkEndpoint {
  NodeIndex node = 0;
  net::PortId port;
};

struct LinkCounters {
  std::uint64_t delivered = 0;
  std::uint64_t dropped_down = 0;
};

struct Link {
  std::string id;
  LinkEndpoint a;
  LinkEndpoint b;
  SimTime delay{};
  std::optional<double> capacity_pps;
  bool up = true;
  LinkCounters counters;
  SimTime busy_until[2] = {};  // per direction, when capacity is limited
};

/// Observation of a transmission, for tests and traces.
struct TapRecord {
  SimTime at;
  NodeIndex node;
  net::PortId port;
  const Wire& wire;
};

class Network {
 public:
  explicit Network(Simulator& sim) : sim_(sim) {}

  Simulator& sim() { return sim_; }
  const Simulator& sim() const { return sim_; }

  NodeIndex add_node(std::unique_ptr<Node> node);
  /// Throws InvalidArgument when either port is already wired.
  LinkIndex add_link(std::string id, LinkEndpoint a, LinkEndpoint b, SimTime delay,
                     std::optional<double> capacity_pps = std::nullopt);

  std::size_t node_count() const { return nodes_.size(); }
  Node& node(NodeIndex i) { return *nodes_.at(i); }
  const Node& node(NodeIndex i) const { return *nodes_.at(i); }
  std::optional<NodeIndex> find_node(const std::string& id) const;

  std::size_t link_count() const { return links_.size(); }
  const Link& link(LinkIndex i) const { return links_.at(i); }
  std::optional<LinkIndex> find_link(const std::string& id) const;
  std::optional<LinkIndex> link_at(NodeIndex node, net::PortId port) const;

  void start_all();

  /// Sends on the link attached to (node, port). Frames on a down or absent
  /// link are lost.
  void transmit(NodeIndex from, net::PortId port, Wire wire);
  /// Changes admin state and signals carrier to both ends.
  void set_link_up(LinkIndex link, bool up);

  void set_tap(std::function<void(const TapRecord&)> tap) { tap_ = std::move(tap); }

  /// Timestamped protocol events ("t=1.000000 node message").
  const std::vector<std::string>& event_log() const { return log_; }
  void log(const Node& node, const std::string& message);
  void set_log_enabled(bool enabled) { log_enabled_ = enabled; }

 private:
  void deliver(LinkIndex link, int dir, Wire wire);
  std::string stamp() const;

  Simulator& sim_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<Link> links_;
  // Per node: (port, link) pairs; nodes have few ports, so a scan is cheapest.
  std::vector<std::vector<std::pair<net::PortId, LinkIndex>>> port_links_;
  std::function<void(const TapRecord&)> tap_;
  std::vector<std::string> log_;
  bool log_enabled_ = true;
};

}  // namespace oshi::sim
