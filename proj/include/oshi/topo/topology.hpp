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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/common/time.hpp"
#include "oshi/ctrl/controller.hpp"
#include "oshi/net/addr.hpp"
#include "oshi/net/port.hpp"
#include "oshi/node/config.hpp"

namespace oshi::topo {

// Topology document, version 1:
//   {"version":1,
//    "coexistence":{"mode":"untagged"} | {"mode":"tagged","ip_vid":1},
//    "controller":"CR1",                       optional; default: smallest OSHI id
//    "nodes":[{"id","role":"cr|pe|router|ce","reserved_vids"?,"shard"?}],
//    "links":[{"id","a":{"node","port"},"b":{"node","port"},
//              "cost"?,"delay_ms"?,"overlay"?:"none|vxlan|vpn",
//              "capacity_pps"?,"ip_vid"?}],
//    "vlls":[{"id","end_a":"PE1:3[:vid]","end_b":...}]}
// "x-ui" blocks (top level and per node) are kept verbatim and ignored.
// "ip_vid" on a PE-CE link makes the customer port classify IP as tagged.

inline constexpr int kTopologyVersion = 1;

enum class Overlay { None, Vxlan, Vpn };
std::string_view to_string(Overlay o);
/// "none", "vxlan" or "vpn"; nullopt otherwise.
std::optional<Overlay> overlay_from_string(std::string_view text);

struct NodeDecl {
  std::string id;
  node::NodeRole role = node::NodeRole::CoreOshi;
  std::set<std::uint16_t> reserved_vids;
  /// Worker shard of the original testbed mapping; validated, otherwise unused.
  std::optional<std::uint32_t> shard;
  nlohmann::json ui;  // "x-ui", null when absent
  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

struct LinkDecl {
  std::string id;
  net::LinkEnd a;
  net::LinkEnd b;
  std::uint32_t cost = 1;
  SimTime delay = std::chrono::milliseconds(1);
  Overlay overlay = Overlay::None;
  std::optional<double> capacity_pps;
  std::optional<std::uint16_t> ip_vid;
  friend bool operator==(const LinkDecl&, const LinkDecl&) = default;
};

struct VllDecl {
  std::string id;
  ctrl::VllEndpoint end_a;
  ctrl::VllEndpoint end_b;
  friend bool operator==(const VllDecl&, const VllDecl&) = default;
};

struct TopologyDoc {
  int version = kTopologyVersion;
  node::CoexistenceMode coexistence;
  std::optional<std::string> controller;
  std::vector<NodeDecl> nodes;
  std::vector<LinkDecl> links;
  std::vector<VllDecl> vlls;
  nlohmann::json ui;

  const NodeDecl* find_node(std::string_view id) const;
  const LinkDecl* find_link(std::string_view id) const;
  /// Controller host: the declared one, else the smallest OSHI node id.
  std::optional<std::string> controller_node() const;
  friend bool operator==(const TopologyDoc&, const TopologyDoc&) = default;
};

struct Violation {
  std::string path;  // JSON pointer style, e.g. "/links/3/a/node"
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ParseResult {
  std::optional<TopologyDoc> doc;
  std::vector<Violation> violations;
  bool ok() const { return doc.has_value(); }
};

/// Structural and semantic validation; never throws.
ParseResult parse_topology(const nlohmann::json& j);
/// As parse_topology, but throws Schema listing every violation.
TopologyDoc load_topology(const nlohmann::json& j);
/// Reads and loads a file; throws InvalidArgument when unreadable.
TopologyDoc load_topology_file(const std::string& path);

/// Semantic checks on an in-memory document (ids, endpoints, roles).
std::vector<Violation> validate(const TopologyDoc& doc);

/// Canonical form; parse_topology(to_json(d)) reproduces d.
nlohmann::json to_json(const TopologyDoc& doc);

struct LinkAddressing {
  net::Ipv4Prefix subnet;
  net::Ipv4Addr a;  // .1 of the /30
  net::Ipv4Addr b;  // .2 of the /30
};

/// Link /30s from 10.0.0.0/8 and /32 loopbacks from 172.16.0.0/16, handed
/// out in document order.
class AddressPlan {
 public:
  /// Throws Infeasible when a pool runs out.
  static AddressPlan build(const TopologyDoc& doc);

  net::Ipv4Addr loopback(const std::string& node) const;
  const LinkAddressing& link(const std::string& link) const;
  const std::map<std::string, net::Ipv4Addr>& loopbacks() const { return loopbacks_; }
  const std::map<std::string, LinkAddressing>& links() const { return links_; }

  /// Empty when no two assigned prefixes overlap.
  std::vector<std::string> audit() const;

 private:
  std::map<std::string, net::Ipv4Addr> loopbacks_;
  std::map<std::string, LinkAddressing> links_;
};

}  // namespace oshi::topo
