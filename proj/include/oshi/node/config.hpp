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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oshi/common/time.hpp"
#include "oshi/ctrl/controller.hpp"
#include "oshi/net/addr.hpp"
#include "oshi/net/frame.hpp"
#include "oshi/net/port.hpp"
#include "oshi/overlay/vxlan.hpp"
#include "oshi/routing/daemon.hpp"

namespace oshi::node {

enum class NodeRole { CoreOshi, AccessOshi, PlainRouter, CustomerEdge };

/// "cr", "pe", "router", "ce".
std::string_view to_string(NodeRole role);
/// Throws Schema for an unknown role.
NodeRole role_from_string(std::string_view text);
constexpr bool is_oshi(NodeRole r) { return r == NodeRole::CoreOshi || r == NodeRole::AccessOshi; }

/// How IP traffic is told apart from SBP traffic on OSHI-OSHI links.
struct CoexistenceMode {
  enum class Kind { Untagged, Tagged };
  Kind kind = Kind::Untagged;
  std::uint16_t ip_vid = 1;  // Tagged only

  static CoexistenceMode untagged() { return {}; }
  static CoexistenceMode tagged(std::uint16_t vid = 1) { return {Kind::Tagged, vid}; }
  bool is_tagged() const { return kind == Kind::Tagged; }
  friend bool operator==(const CoexistenceMode&, const CoexistenceMode&) = default;
};

/// What sits at the far end of a port.
enum class PortFacing { Core, Customer, Router };
std::string_view to_string(PortFacing f);

struct PortConfig {
  net::PortId id;
  net::PortKind kind = net::PortKind::Physical;  // Physical or Tunnel
  PortFacing facing = PortFacing::Core;
  std::optional<overlay::TunnelPort> tunnel;  // required for Tunnel ports
  // Numbered point-to-point IP interface on this port.
  net::Ipv4Addr address;
  net::Ipv4Prefix subnet;
  std::uint32_t cost = 1;
  /// Customer ports only: IP traffic arrives tagged with this vid
  /// (TaggedToIp); otherwise it arrives untagged (UntaggedToIp).
  std::optional<std::uint16_t> customer_ip_vid;
};

struct StaticRoute {
  net::Ipv4Prefix prefix;
  net::Ipv4Addr next_hop;
  net::PortId port;  // physical/tunnel port
  bool redistribute = false;
};

struct NodeConfig {
  std::string id;
  NodeRole role = NodeRole::CoreOshi;
  net::Dpid dpid;
  net::Ipv4Addr loopback;
  std::vector<PortConfig> ports;
  CoexistenceMode coexistence;
  std::set<std::uint16_t> reserved_vids;
  std::vector<StaticRoute> static_routes;
  bool run_routing = true;
  routing::Timers timers;
  SimTime hello_offset{};
  /// Address of the controller; OSHI nodes register with it.
  std::optional<net::Ipv4Addr> controller;
  bool hosts_controller = false;
  ctrl::ControllerConfig controller_config;
  SimTime registration_interval = std::chrono::seconds(5);
  SimTime registration_offset{};

  const PortConfig* port(net::PortId p) const;
};

}  // namespace oshi::node
