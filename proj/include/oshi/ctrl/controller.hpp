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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/common/error.hpp"
#include "oshi/common/time.hpp"
#include "oshi/ctrl/topology_view.hpp"
#include "oshi/flow/flow.hpp"
#include "oshi/net/addr.hpp"

namespace oshi::ctrl {

struct PortInfo {
  net::PortId port;
  std::string kind;    // "physical" | "virtual" | "tunnel"
  std::string facing;  // "core" | "customer" | "router"
  std::optional<std::uint16_t> ip_vid;  // customer port classified TaggedToIp
};

/// What a switch's management entity reports about itself.
struct SwitchInfo {
  net::Dpid dpid;
  std::string node;
  std::string role;
  net::Ipv4Addr address;
  std::vector<PortInfo> ports;
  std::set<std::uint16_t> reserved_vids;
  std::optional<std::uint16_t> ip_vid;  // Tagged coexistence
  SimTime last_hello{};

  const PortInfo* port(net::PortId p) const;
};

struct VllEndpoint {
  std::string node;
  net::PortId port;
  std::optional<std::uint16_t> vid;  // nullopt: untagged customer traffic

  /// "PE1:3" or "PE1:3:300". Throws InvalidArgument.
  static VllEndpoint parse(const std::string& text);
  std::string to_string() const;
  friend auto operator<=>(const VllEndpoint&, const VllEndpoint&) = default;
};

struct VllRequest {
  std::string id;  // empty: controller picks "vll-<n>"
  VllEndpoint end_a;
  VllEndpoint end_b;
};

struct RouteHop {
  std::string node;
  net::Dpid dpid;
  std::optional<net::PortId> in_port;   // absent on the first hop
  std::optional<net::PortId> out_port;  // absent on the last hop
  friend bool operator==(const RouteHop&, const RouteHop&) = default;
};

struct Route {
  std::vector<RouteHop> hops;
  std::vector<std::string> nodes() const;
  /// Link between hops[i] and hops[i + 1].
  ViewLink link(std::size_t i) const;
  std::size_t link_count() const { return hops.empty() ? 0 : hops.size() - 1; }
  friend bool operator==(const Route&, const Route&) = default;
};

enum class VllState { Pending, Active, Failed };
std::string_view to_string(VllState s);

struct VllDescriptor {
  std::string id;
  VllEndpoint end_a;
  VllEndpoint end_b;
  Route path;
  std::vector<std::uint16_t> vids;  // one per path link
  std::vector<std::uint64_t> cookies;
  VllState state = VllState::Pending;
  std::size_t rule_count = 0;
};

nlohmann::json to_json(const VllEndpoint& e);
VllEndpoint endpoint_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Route& r);
nlohmann::json to_json(const VllDescriptor& d);

/// Cookies of VLL rules carry this bit; bootstrap rules use cookie 0.
inline constexpr std::uint64_t kVllCookieFlag = std::uint64_t{1} << 63;
inline constexpr std::uint16_t kVllClassifyPriority = 300;
inline constexpr std::uint16_t kVllForwardPriority = 100;

/// Rules realizing both directions of a VLL along `path`, keyed by switch.
/// vids[i] tags frames on path link i in both directions.
std::map<net::Dpid, std::vector<flow::FlowEntry>> build_vll_rules(
    const Route& path, const VllEndpoint& a, const VllEndpoint& b,
    const std::vector<std::uint16_t>& vids, std::uint64_t cookie);

/// Minimum-hop path over the view; among equal-hop paths the
/// lexicographically smallest node-id sequence wins, then the smallest ports.
/// `names` maps every switch in the view to its node id. Throws NoPath.
Route shortest_route(const TopologyView& view, const std::map<net::Dpid, std::string>& names,
                     net::Dpid src, net::Dpid dst);

/// Services the controller needs from the node that hosts it.
class ControllerHost {
 public:
  virtual ~ControllerHost() = default;
  virtual SimTime now() const = 0;
  virtual void schedule(SimTime delay, std::function<void()> fn) = 0;
  virtual void send_control(net::Ipv4Addr dst, const nlohmann::json& msg) = 0;
  virtual void log(const std::string& message) = 0;
};

struct ControllerConfig {
  SimTime first_discovery = std::chrono::seconds(1);
  SimTime discovery_interval = std::chrono::seconds(5);
  SimTime link_timeout = std::chrono::seconds(20);
};

struct FlowModResult {
  bool ok = false;
  Errc errc = Errc::InvalidArgument;
  std::string error;
  flow::RuleHandle handle;
  std::size_t deleted = 0;
};

/// The SDN controller: registration, discovery, routing over the discovered
/// view, static flow pushing and VLL provisioning. All switch state changes
/// travel as flow_mod messages over the in-band channel.
class Controller {
 public:
  Controller(ControllerConfig config, ControllerHost& host);
  Controller(const Controller&) = delete;
  Controller& operator=(const Controller&) = delete;

  void start();
  void receive(const nlohmann::json& msg);

  const TopologyView& view() const { return view_; }
  const TagAllocator& allocator() const { return tags_; }
  const std::map<net::Dpid, SwitchInfo>& switches() const { return switches_; }
  const SwitchInfo* switch_info(const std::string& node) const;
  std::uint64_t discovery_rounds() const { return rounds_; }

  /// Throws UnknownNode or NoPath.
  Route get_route(const std::string& src, const std::string& dst) const;

  /// Validates, allocates and sends the rules; the descriptor stays Pending
  /// until every switch confirms. Throws UnknownNode, InvalidArgument,
  /// ReservedVid, EndpointConflict, NoPath or TagExhausted; on a throw no
  /// state has changed.
  const VllDescriptor& push_vll(const VllRequest& request);
  /// Sends rule removal, releases vids, forgets the descriptor. Throws UnknownVll.
  void delete_vll(const std::string& id);
  const VllDescriptor* find_vll(const std::string& id) const;
  const std::map<std::string, VllDescriptor>& vlls() const { return vlls_; }
  /// Error of a push that a switch rejected (the VLL was rolled back).
  std::optional<std::string> push_failure(const std::string& id) const;

  /// Sends one flow_mod; returns its xid. Throws UnknownNode for an unknown dpid.
  std::uint64_t static_flow_push(net::Dpid dpid, const flow::FlowEntry& entry);
  const FlowModResult* result(std::uint64_t xid) const;

  /// True when no flow_mod awaits a reply.
  bool idle() const { return outstanding_.empty(); }

 private:
  struct Outstanding {
    net::Dpid dpid;
    std::string vll;  // empty for static pushes and deletions
  };

  void discovery_round();
  void on_hello(const nlohmann::json& msg);
  void on_packet_in(const nlohmann::json& msg);
  void on_reply(const nlohmann::json& msg);
  void on_port_status(const nlohmann::json& msg);
  void links_lost(const std::vector<ViewLink>& lost);
  std::uint64_t send_flow_mod(net::Dpid dpid, nlohmann::json body, const std::string& vll);
  void send_delete(net::Dpid dpid, std::uint64_t cookie);
  void rollback(VllDescriptor& d);
  std::set<std::uint16_t> link_reserved(const ViewLink& link) const;
  std::set<std::uint16_t> first_vids_at(const VllEndpoint& e) const;
  void check_endpoint(const VllEndpoint& e) const;
  std::map<net::Dpid, std::string> names() const;

  ControllerConfig config_;
  ControllerHost& host_;
  std::map<net::Dpid, SwitchInfo> switches_;
  TopologyView view_;
  TagAllocator tags_;
  std::map<std::string, VllDescriptor> vlls_;
  std::map<std::string, std::string> push_failures_;
  std::map<std::uint64_t, Outstanding> outstanding_;
  std::map<std::uint64_t, FlowModResult> results_;
  std::uint64_t next_xid_ = 1;
  std::uint64_t next_vll_ = 1;
  std::uint64_t rounds_ = 0;
};

}  // namespace oshi::ctrl
