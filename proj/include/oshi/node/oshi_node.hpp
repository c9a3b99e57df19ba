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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/ctrl/controller.hpp"
#include "oshi/flow/switch.hpp"
#include "oshi/node/ip_node.hpp"

namespace oshi::node {

/// Where the SCS sends a frame arriving on a port.
struct IngressDecision {
  enum class Kind { ToIpEngine, ToSbp, ToController, Drop };
  Kind kind = Kind::Drop;
  /// ToSbp: the VLL the classifying rule belongs to, when known.
  std::optional<std::string> vll;
  std::uint64_t cookie = 0;
};
std::string_view to_string(IngressDecision::Kind k);

struct OshiCounters {
  std::uint64_t scs_traversals = 0;
  std::uint64_t sbp_frames = 0;     // switched port to port without the IP engine
  std::uint64_t packet_ins = 0;
  std::uint64_t flow_mods = 0;
  std::uint64_t flow_mods_rejected = 0;
  std::uint64_t control_sent = 0;
  std::uint64_t control_unroutable = 0;
};

/// The bootstrap rules a node starts with: probe capture, IP bypass between
/// each physical/tunnel port and its virtual twin, customer port defaults.
/// Throws ReservedVid when an IP vid is reserved.
std::vector<flow::FlowEntry> bootstrap_rules(const NodeConfig& config);

/// Open Source Hybrid IP/SDN node: an SDN capable switch (SCS) owns every
/// physical and tunnel port; the IP engine and routing daemon sit behind the
/// paired virtual ports. A management entity registers the switch with the
/// controller and applies its flow_mods. The controller may run on the node.
class OshiNode : public IpNode, private ctrl::ControllerHost {
 public:
  /// Throws PortPairing, ReservedVid or InvalidArgument.
  explicit OshiNode(NodeConfig config);

  void start() override;
  void receive(net::PortId port, sim::Wire wire) override;
  void carrier(net::PortId port, bool up) override;

  const flow::Switch& scs() const { return sw_; }
  std::size_t rule_count() const { return sw_.rule_count(); }
  const OshiCounters& oshi_counters() const { return counters_; }

  /// Controller hosted on this node, if any.
  ctrl::Controller* controller() { return controller_.get(); }
  const ctrl::Controller* controller() const { return controller_.get(); }

  IngressDecision classify_ingress(const net::EthernetFrame& frame, net::PortId port) const;
  /// Per customer port: the IP default and the VLLs classified there.
  nlohmann::json ingress_policy() const;
  /// VLL labels of installed rule cookies.
  const std::map<std::uint64_t, std::string>& labels() const { return labels_; }

  nlohmann::json counters_json() const override;

  // Shared by RouterHost and ControllerHost.
  SimTime now() const override { return IpNode::now(); }
  void schedule(SimTime delay, std::function<void()> fn) override {
    IpNode::schedule(delay, std::move(fn));
  }
  void log(const std::string& message) override { IpNode::log(message); }

 protected:
  net::PortId engine_port(net::PortId physical) const override {
    return net::virtual_port_of(physical);
  }
  void ip_emit(net::PortId port, net::Ipv4Packet packet, net::Ipv4Addr next_hop,
               measure::TrafficClass cls) override;
  void on_control(const net::Ipv4Packet& packet) override;

 private:
  void send_control(net::Ipv4Addr dst, const nlohmann::json& msg) override;

  /// One SCS pipeline pass and dispatch of its emissions.
  void scs_pass(net::EthernetFrame frame, net::PortId in_port, measure::TrafficClass cls);
  void handle_message(const nlohmann::json& msg);
  void to_controller(const nlohmann::json& msg);
  void register_tick();
  nlohmann::json hello() const;
  void apply_flow_mod(const nlohmann::json& msg);
  void apply_packet_out(const nlohmann::json& msg);

  flow::Switch sw_;
  std::unique_ptr<ctrl::Controller> controller_;
  std::map<std::uint64_t, std::string> labels_;
  OshiCounters counters_;
};

}  // namespace oshi::node
