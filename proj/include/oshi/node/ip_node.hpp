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
#include <map>
#include <memory>
#include <set>
#include <span>

#include <nlohmann/json.hpp>

#include "oshi/measure/cost_model.hpp"
#include "oshi/node/config.hpp"
#include "oshi/overlay/vxlan.hpp"
#include "oshi/routing/daemon.hpp"
#include "oshi/routing/ip_engine.hpp"
#include "oshi/sim/network.hpp"

namespace oshi::node {

/// Routing and management traffic is Control; everything else is Data.
measure::TrafficClass traffic_class(const net::EthernetFrame& frame);
measure::TrafficClass traffic_class(std::span<const std::uint8_t> frame_bytes);

struct IpCounters {
  std::uint64_t forwarded = 0;
  std::uint64_t delivered = 0;
  std::uint64_t no_route = 0;
  std::uint64_t ttl_expired = 0;
  std::uint64_t udp_packets = 0;
  std::uint64_t udp_bytes = 0;
  std::uint64_t non_ip_dropped = 0;
};

/// Delivered UDP traffic per destination port.
struct UdpPortCounters {
  std::uint64_t packets = 0;
  std::uint64_t bytes = 0;
};

/// Echo request/reply payload: type (8 or 0), code 0, 8-byte identifier.
inline constexpr std::uint8_t kIcmpEchoRequest = 8;
inline constexpr std::uint8_t kIcmpEchoReply = 0;

/// Common IP host/router behavior: IP engine, optional routing daemon,
/// local delivery (routing, control, echo, UDP sink) and tunnel ports.
class IpNode : public sim::Node, public routing::RouterHost {
 public:
  explicit IpNode(NodeConfig config);

  const NodeConfig& config() const { return config_; }
  NodeRole role() const { return config_.role; }
  net::Ipv4Addr loopback() const { return config_.loopback; }

  const routing::IpEngine& engine() const { return engine_; }
  const routing::RoutingDaemon* daemon() const { return daemon_.get(); }
  const IpCounters& ip_counters() const { return ip_counters_; }
  const overlay::Tunnel* tunnel(net::PortId port) const;

  /// Sends a locally originated packet. Returns false when there is no route.
  bool originate(net::Ipv4Packet packet);

  /// Sends an echo request; a reply is recorded under `id`.
  bool ping(net::Ipv4Addr dst, std::uint64_t id);
  bool echo_replied(std::uint64_t id) const { return echo_replies_.contains(id); }
  void clear_echo_replies() { echo_replies_.clear(); }

  /// Called for every UDP packet delivered to this node.
  void set_udp_sink(std::function<void(const net::Ipv4Packet&)> sink) {
    udp_sink_ = std::move(sink);
  }
  const std::function<void(const net::Ipv4Packet&)>& udp_sink() const { return udp_sink_; }
  /// Nullptr until a datagram for the port was delivered.
  const UdpPortCounters* udp_port(std::uint16_t port) const;

  virtual nlohmann::json counters_json() const;

  // RouterHost
  SimTime now() const override { return sim().now(); }
  void schedule(SimTime delay, std::function<void()> fn) override;
  void send_routing(net::PortId port, net::Ipv4Packet packet) override;
  void fib_changed(const routing::Fib& fib) override;
  void log(const std::string& message) override { sim::Node::log(message); }

  void start() override;

 protected:
  /// Engine port a physical/tunnel port maps to.
  virtual net::PortId engine_port(net::PortId physical) const = 0;
  /// Emits a packet the engine routed out of `port` (an engine port).
  virtual void ip_emit(net::PortId port, net::Ipv4Packet packet, net::Ipv4Addr next_hop,
                       measure::TrafficClass cls) = 0;
  /// Handles a control-channel datagram addressed to this node.
  virtual void on_control(const net::Ipv4Packet& packet);

  /// Runs the engine on a received packet and acts on the outcome.
  void handle_ip(net::Ipv4Packet packet, net::PortId engine_port, measure::TrafficClass cls);
  void deliver_local(const net::Ipv4Packet& packet, net::PortId engine_port);
  void count_udp(const net::Ipv4Packet& packet);

  /// Builds the frame for an IP packet leaving on a physical port.
  net::EthernetFrame ip_frame(net::PortId physical, const net::Ipv4Packet& packet,
                              net::Ipv4Addr next_hop) const;
  /// Sends a frame on a physical or tunnel port, encapsulating as needed.
  void transmit(net::PortId port, net::EthernetFrame frame, measure::TrafficClass cls);
  /// Unwraps a received wire; nullopt when a tunnel rejects it.
  std::optional<net::EthernetFrame> unwrap(net::PortId port, sim::Wire wire,
                                           measure::TrafficClass& cls);

  NodeConfig config_;
  routing::IpEngine engine_;
  std::unique_ptr<routing::RoutingDaemon> daemon_;
  std::map<net::PortId, overlay::Tunnel> tunnels_;
  IpCounters ip_counters_;
  std::set<std::uint64_t> echo_replies_;
  std::function<void(const net::Ipv4Packet&)> udp_sink_;
  std::map<std::uint16_t, UdpPortCounters> udp_ports_;
};

/// IP router without an SCS; the engine is bound to physical ports. With
/// role CustomerEdge it runs no routing daemon and relies on static routes.
/// A port with customer_ip_vid sends and expects IP tagged with that vid.
/// UDP datagrams arriving tagged with any other vid (a VLAN subinterface
/// fed by a VLL) are counted per destination port but not routed.
/// A router terminating tunnels pays two switch traversals per packet, as
/// its IP traffic has to cross the tunneling switch.
class PlainRouter : public IpNode {
 public:
  explicit PlainRouter(NodeConfig config);

  void receive(net::PortId port, sim::Wire wire) override;
  void carrier(net::PortId port, bool up) override;
  std::size_t rule_count() const { return 0; }

  /// Receives every frame not consumed as IP (e.g. customer frames carried
  /// over a VLL), after tunnel decapsulation.
  void set_frame_sink(std::function<void(net::PortId, const net::EthernetFrame&)> sink) {
    frame_sink_ = std::move(sink);
  }
  const std::function<void(net::PortId, const net::EthernetFrame&)>& frame_sink() const {
    return frame_sink_;
  }

 protected:
  net::PortId engine_port(net::PortId physical) const override { return physical; }
  void ip_emit(net::PortId port, net::Ipv4Packet packet, net::Ipv4Addr next_hop,
               measure::TrafficClass cls) override;

 private:
  bool tunnel_switching_ = false;
  // Ports where IP travels tagged (customer_ip_vid), port -> vid.
  std::map<net::PortId, std::uint16_t> ip_vids_;
  std::function<void(net::PortId, const net::EthernetFrame&)> frame_sink_;
};

}  // namespace oshi::node
