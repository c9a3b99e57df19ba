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

#include "oshi/topo/topology.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "oshi/common/error.hpp"
#include "oshi/net/frame.hpp"

namespace oshi::topo {

using node::NodeRole;
using nlohmann::json;

std::optional<Overlay> overlay_from_string(std::string_view s) {
  if (s == "none") return Overlay::None;
  if (s == "vxlan") return Overlay::Vxlan;
  if (s == "vpn") return Overlay::Vpn;
  return std::nullopt;
}

std::string_view to_string(Overlay o) {
  switch (o) {
    case Overlay::None: return "none";
    case Overlay::Vxlan: return "vxlan";
    case Overlay::Vpn: return "vpn";
  }
  return "?";
}

const NodeDecl* TopologyDoc::find_node(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const LinkDecl* TopologyDoc::find_link(std::string_view id) const {
  for (const auto& l : links) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

std::optional<std::string> TopologyDoc::controller_node() const {
  if (controller) return controller;
  std::optional<std::string> best;
  for (const auto& n : nodes) {
    if (node::is_oshi(n.role) && (!best || n.id < *best)) best = n.id;
  }
  return best;
}

namespace {

// Collects violations while reading; accessors return nullopt on mismatch.
class Reader {
 public:
  std::vector<Violation> violations;

  void fail(const std::string& path, const std::string& message) {
    violations.push_back(Violation{path, message});
  }

  const json* field(const json& obj, const std::string& path, const char* key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> string(const json& obj, const std::string& path, const char* key,
                                    bool required = true) {
    const json* v = field(obj, path, key, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) {
      fail(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<std::int64_t> integer(const json& obj, const std::string& path, const char* key,
                                      std::int64_t lo, std::int64_t hi, bool required = true) {
    const json* v = field(obj, path, key, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(path + "/" + key, "expected an integer");
      return std::nullopt;
    }
    const auto x = v->get<std::int64_t>();
    if (x < lo || x > hi) {
      fail(path + "/" + key,
           "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
               std::to_string(hi) + "]");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> number(const json& obj, const std::string& path, const char* key) {
    const json* v = field(obj, path, key, false);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) {
      fail(path + "/" + key, "expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  const json* array(const json& obj, const std::string& path, const char* key, bool required) {
    const json* v = field(obj, path, key, required);
    if (v == nullptr) return nullptr;
    if (!v->is_array()) {
      fail(path + "/" + key, "expected an array");
      return nullptr;
    }
    return v;
  }
};

std::optional<net::LinkEnd> read_end(Reader& r, const json& link, const std::string& path,
                                     const char* key) {
  const json* v = r.field(link, path, key, true);
  if (v == nullptr) return std::nullopt;
  const std::string p = path + "/" + key;
  if (!v->is_object()) {
    r.fail(p, "expected an object {node, port}");
    return std::nullopt;
  }
  const auto node = r.string(*v, p, "node");
  const auto port = r.integer(*v, p, "port", 1, net::kVirtualPortBase - 1);
  if (!node || !port) return std::nullopt;
  return net::LinkEnd{*node, net::PortId(static_cast<std::uint32_t>(*port))};
}

std::optional<ctrl::VllEndpoint> read_endpoint(Reader& r, const json& obj,
                                               const std::string& path, const char* key) {
  const json* v = r.field(obj, path, key, true);
  if (v == nullptr) return std::nullopt;
  try {
    return ctrl::endpoint_from_json(*v);
  } catch (const std::exception& e) {
    r.fail(path + "/" + key, e.what());
    return std::nullopt;
  }
}

std::optional<node::CoexistenceMode> read_coexistence(Reader& r, const json& j) {
  const auto it = j.find("coexistence");
  if (it == j.end()) return node::CoexistenceMode::untagged();
  if (!it->is_object()) {
    r.fail("/coexistence", "expected an object {mode, ip_vid?}");
    return std::nullopt;
  }
  const auto mode = r.string(*it, "/coexistence", "mode");
  if (!mode) return std::nullopt;
  if (*mode == "untagged") return node::CoexistenceMode::untagged();
  if (*mode == "tagged") {
    const auto vid = r.integer(*it, "/coexistence", "ip_vid", 1, 4094, false);
    if (!vid && it->contains("ip_vid")) return std::nullopt;
    return node::CoexistenceMode::tagged(vid ? static_cast<std::uint16_t>(*vid) : 1);
  }
  r.fail("/coexistence/mode", "unknown mode '" + *mode + "'");
  return std::nullopt;
}

}  // namespace

std::vector<Violation> validate(const TopologyDoc& doc) {
  std::vector<Violation> out;
  const auto fail = [&](std::string path, std::string msg) {
    out.push_back(Violation{std::move(path), std::move(msg)});
  };
  if (doc.version != kTopologyVersion) {
    fail("/version", "unsupported version " + std::to_string(doc.version));
  }
  if (doc.coexistence.is_tagged() && net::is_reserved_vid(doc.coexistence.ip_vid)) {
    fail("/coexistence/ip_vid", "reserved vid");
  }

  std::map<std::string, const NodeDecl*> nodes;
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    const auto& n = doc.nodes[i];
    const std::string p = "/nodes/" + std::to_string(i);
    if (n.id.empty()) fail(p + "/id", "empty node id");
    if (!nodes.emplace(n.id, &n).second) fail(p + "/id", "duplicate node id '" + n.id + "'");
    for (auto v : n.reserved_vids) {
      if (v > net::kMaxVid) fail(p + "/reserved_vids", "vid " + std::to_string(v) + " > 4095");
    }
  }

  std::set<std::string> link_ids;
  std::set<net::LinkEnd> used;
  std::map<net::LinkEnd, std::string> peer_role;  // end -> role of the far node
  for (std::size_t i = 0; i < doc.links.size(); ++i) {
    const auto& l = doc.links[i];
    const std::string p = "/links/" + std::to_string(i);
    if (l.id.empty()) fail(p + "/id", "empty link id");
    if (!link_ids.insert(l.id).second) fail(p + "/id", "duplicate link id '" + l.id + "'");
    bool ends_ok = true;
    for (const auto& [end, key] : {std::pair{l.a, "a"}, std::pair{l.b, "b"}}) {
      if (!nodes.contains(end.node)) {
        fail(p + "/" + key + "/node",
             "link " + l.id + " references undeclared node '" + end.node + "'");
        ends_ok = false;
      }
      if (end.port.value() == 0 || end.port.value() >= net::kVirtualPortBase) {
        fail(p + "/" + key + "/port", "link " + l.id + ": port out of range");
      }
      if (!used.insert(end).second) {
        fail(p + "/" + key, "link " + l.id + ": port " + std::to_string(end.port.value()) +
                                " of " + end.node + " is already wired");
      }
    }
    if (l.a.node == l.b.node) fail(p, "link " + l.id + " connects " + l.a.node + " to itself");
    if (l.cost < 1) fail(p + "/cost", "link " + l.id + ": cost must be >= 1");
    if (l.delay < SimTime::zero()) fail(p + "/delay_ms", "link " + l.id + ": negative delay");
    if (l.capacity_pps && !(*l.capacity_pps > 0)) {
      fail(p + "/capacity_pps", "link " + l.id + ": capacity must be > 0");
    }
    if (!ends_ok) continue;
    const NodeRole ra = nodes.at(l.a.node)->role;
    const NodeRole rb = nodes.at(l.b.node)->role;
    const bool ce_a = ra == NodeRole::CustomerEdge;
    const bool ce_b = rb == NodeRole::CustomerEdge;
    if (ce_a && ce_b) {
      fail(p, "link " + l.id + " is a CE-CE link");
    } else if ((ce_a && rb != NodeRole::AccessOshi) || (ce_b && ra != NodeRole::AccessOshi)) {
      fail(p, "link " + l.id + ": CE nodes attach only to PE nodes");
    }
    if (l.ip_vid) {
      if (!(ce_a || ce_b)) fail(p + "/ip_vid", "link " + l.id + ": ip_vid needs a PE-CE link");
      if (net::is_reserved_vid(*l.ip_vid) || *l.ip_vid > net::kMaxVid) {
        fail(p + "/ip_vid", "link " + l.id + ": reserved vid");
      }
    }
    peer_role[l.a] = std::string(node::to_string(rb));
    peer_role[l.b] = std::string(node::to_string(ra));
  }

  if (doc.controller) {
    const auto it = nodes.find(*doc.controller);
    if (it == nodes.end()) {
      fail("/controller", "undeclared node '" + *doc.controller + "'");
    } else if (!node::is_oshi(it->second->role)) {
      fail("/controller", "controller must run on an OSHI node");
    }
  }

  std::set<std::string> vll_ids;
  for (std::size_t i = 0; i < doc.vlls.size(); ++i) {
    const auto& v = doc.vlls[i];
    const std::string p = "/vlls/" + std::to_string(i);
    if (!v.id.empty() && !vll_ids.insert(v.id).second) {
      fail(p + "/id", "duplicate vll id '" + v.id + "'");
    }
    for (const auto& [e, key] : {std::pair{v.end_a, "end_a"}, std::pair{v.end_b, "end_b"}}) {
      const auto it = nodes.find(e.node);
      if (it == nodes.end()) {
        fail(p + "/" + key, "undeclared node '" + e.node + "'");
      } else if (it->second->role != NodeRole::AccessOshi) {
        fail(p + "/" + key, e.node + " is not a PE");
      } else {
        const auto pr = peer_role.find(net::LinkEnd{e.node, e.port});
        if (pr == peer_role.end() || pr->second != "ce") {
          fail(p + "/" + key, e.to_string() + " is not a customer port");
        }
      }
    }
  }
  return out;
}

ParseResult parse_topology(const json& j) {
  Reader r;
  ParseResult res;
  if (!j.is_object()) {
    res.violations.push_back(Violation{"", "document must be a JSON object"});
    return res;
  }
  TopologyDoc doc;
  if (const auto v = r.integer(j, "", "version", 0, 1 << 20)) {
    doc.version = static_cast<int>(*v);
    if (doc.version != kTopologyVersion) {
      r.fail("/version", "unsupported version " + std::to_string(doc.version));
    }
  }
  if (const auto c = read_coexistence(r, j)) doc.coexistence = *c;
  doc.controller = r.string(j, "", "controller", false);
  if (j.contains("x-ui")) doc.ui = j["x-ui"];

  if (const json* nodes = r.array(j, "", "nodes", true)) {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const json& n = (*nodes)[i];
      const std::string p = "/nodes/" + std::to_string(i);
      if (!n.is_object()) {
        r.fail(p, "expected an object");
        continue;
      }
      NodeDecl d;
      const auto id = r.string(n, p, "id");
      const auto role = r.string(n, p, "role");
      if (role) {
        try {
          d.role = node::role_from_string(*role);
        } catch (const Error&) {
          r.fail(p + "/role", "unknown role '" + *role + "'");
        }
      }
      if (const json* rv = r.array(n, p, "reserved_vids", false)) {
        for (std::size_t k = 0; k < rv->size(); ++k) {
          const json& v = (*rv)[k];
          if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
              v.get<std::int64_t>() > net::kMaxVid) {
            r.fail(p + "/reserved_vids/" + std::to_string(k), "expected a vid in [0, 4095]");
          } else {
            d.reserved_vids.insert(v.get<std::uint16_t>());
          }
        }
      }
      if (const auto s = r.integer(n, p, "shard", 0, 1 << 16, false)) {
        d.shard = static_cast<std::uint32_t>(*s);
      }
      if (n.contains("x-ui")) d.ui = n["x-ui"];
      if (id) d.id = *id;
      doc.nodes.push_back(std::move(d));
    }
  }

  if (const json* links = r.array(j, "", "links", true)) {
    for (std::size_t i = 0; i < links->size(); ++i) {
      const json& l = (*links)[i];
      const std::string p = "/links/" + std::to_string(i);
      if (!l.is_object()) {
        r.fail(p, "expected an object");
        continue;
      }
      LinkDecl d;
      if (const auto id = r.string(l, p, "id")) d.id = *id;
      const auto a = read_end(r, l, p, "a");
      const auto b = read_end(r, l, p, "b");
      if (a) d.a = *a;
      if (b) d.b = *b;
      if (const auto c = r.integer(l, p, "cost", 1, 65535, false)) {
        d.cost = static_cast<std::uint32_t>(*c);
      }
      if (const auto ms = r.number(l, p, "delay_ms")) {
        if (*ms < 0 || !std::isfinite(*ms)) {
          r.fail(p + "/delay_ms", "expected a non-negative delay");
        } else {
          d.delay = from_seconds(*ms / 1000.0);
        }
      }
      if (const auto o = r.string(l, p, "overlay", false)) {
        if (const auto ov = overlay_from_string(*o)) {
          d.overlay = *ov;
        } else {
          r.fail(p + "/overlay", "unknown overlay '" + *o + "'");
        }
      }
      d.capacity_pps = r.number(l, p, "capacity_pps");
      if (const auto v = r.integer(l, p, "ip_vid", 1, 4094, false)) {
        d.ip_vid = static_cast<std::uint16_t>(*v);
      }
      doc.links.push_back(std::move(d));
    }
  }

  if (const json* vlls = r.array(j, "", "vlls", false)) {
    for (std::size_t i = 0; i < vlls->size(); ++i) {
      const json& v = (*vlls)[i];
      const std::string p = "/vlls/" + std::to_string(i);
      if (!v.is_object()) {
        r.fail(p, "expected an object");
        continue;
      }
      VllDecl d;
      if (const auto id = r.string(v, p, "id", false)) d.id = *id;
      const auto a = read_endpoint(r, v, p, "end_a");
      const auto b = read_endpoint(r, v, p, "end_b");
      if (a) d.end_a = *a;
      if (b) d.end_b = *b;
      doc.vlls.push_back(std::move(d));
    }
  }

  res.violations = std::move(r.violations);
  if (!res.violations.empty()) return res;
  res.violations = validate(doc);
  if (res.violations.empty()) res.doc = std::move(doc);
  return res;
}

TopologyDoc load_topology(const json& j) {
  auto res = parse_topology(j);
  if (res.ok()) return std::move(*res.doc);
  std::string msg = "invalid topology:";
  for (const auto& v : res.violations) msg += " " + (v.path.empty() ? "/" : v.path) + ": " + v.message + ";";
  msg.pop_back();
  throw Error(Errc::Schema, msg);
}

TopologyDoc load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Schema, path + ": " + e.what());
  }
  return load_topology(j);
}

json to_json(const TopologyDoc& doc) {
  json j;
  j["version"] = doc.version;
  j["coexistence"] = doc.coexistence.is_tagged()
                         ? json{{"mode", "tagged"}, {"ip_vid", doc.coexistence.ip_vid}}
                         : json{{"mode", "untagged"}};
  if (doc.controller) j["controller"] = *doc.controller;
  json nodes = json::array();
  for (const auto& n : doc.nodes) {
    json o{{"id", n.id}, {"role", std::string(node::to_string(n.role))}};
    if (!n.reserved_vids.empty()) o["reserved_vids"] = n.reserved_vids;
    if (n.shard) o["shard"] = *n.shard;
    if (!n.ui.is_null()) o["x-ui"] = n.ui;
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  json links = json::array();
  for (const auto& l : doc.links) {
    json o{{"id", l.id},
           {"a", {{"node", l.a.node}, {"port", l.a.port.value()}}},
           {"b", {{"node", l.b.node}, {"port", l.b.port.value()}}},
           {"cost", l.cost},
           {"delay_ms", static_cast<double>(l.delay.count()) / 1e6},
           {"overlay", std::string(to_string(l.overlay))}};
    if (l.capacity_pps) o["capacity_pps"] = *l.capacity_pps;
    if (l.ip_vid) o["ip_vid"] = *l.ip_vid;
    links.push_back(std::move(o));
  }
  j["links"] = std::move(links);
  json vlls = json::array();
  for (const auto& v : doc.vlls) {
    json o{{"end_a", v.end_a.to_string()}, {"end_b", v.end_b.to_string()}};
    if (!v.id.empty()) o["id"] = v.id;
    vlls.push_back(std::move(o));
  }
  j["vlls"] = std::move(vlls);
  if (!doc.ui.is_null()) j["x-ui"] = doc.ui;
  return j;
}

AddressPlan AddressPlan::build(const TopologyDoc& doc) {
  static const net::Ipv4Prefix kLinkPool = net::Ipv4Prefix::parse("10.0.0.0/8");
  static const net::Ipv4Prefix kLoopbackPool = net::Ipv4Prefix::parse("172.16.0.0/16");
  // Loopbacks skip the network and broadcast addresses of the pool.
  if (doc.nodes.size() > (1u << 16) - 2) {
    throw Error(Errc::Infeasible, "loopback pool 172.16.0.0/16 exhausted");
  }
  if (doc.links.size() > (1u << 22)) throw Error(Errc::Infeasible, "link pool 10.0.0.0/8 exhausted");
  AddressPlan plan;
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    plan.loopbacks_[doc.nodes[i].id] = kLoopbackPool.host(static_cast<std::uint32_t>(i + 1));
  }
  for (std::size_t i = 0; i < doc.links.size(); ++i) {
    const net::Ipv4Prefix subnet(kLinkPool.host(static_cast<std::uint32_t>(4 * i)), 30);
    plan.links_[doc.links[i].id] = LinkAddressing{subnet, subnet.host(1), subnet.host(2)};
  }
  return plan;
}

net::Ipv4Addr AddressPlan::loopback(const std::string& node) const {
  const auto it = loopbacks_.find(node);
  if (it == loopbacks_.end()) throw Error(Errc::UnknownNode, "no loopback for '" + node + "'");
  return it->second;
}

const LinkAddressing& AddressPlan::link(const std::string& link) const {
  const auto it = links_.find(link);
  if (it == links_.end()) throw Error(Errc::UnknownLink, "no addressing for '" + link + "'");
  return it->second;
}

std::vector<std::string> AddressPlan::audit() const {
  std::vector<std::pair<net::Ipv4Prefix, std::string>> all;
  for (const auto& [n, a] : loopbacks_) all.emplace_back(net::Ipv4Prefix(a, 32), "loopback " + n);
  for (const auto& [l, a] : links_) all.emplace_back(a.subnet, "link " + l);
  std::sort(all.begin(), all.end());
  std::vector<std::string> out;
  // Sorted by network address, prefixes overlap only if adjacent ones do
  // or one contains a later one; checking every earlier span covers both.
  std::uint64_t reach = 0;
  std::string reach_owner;
  for (const auto& [p, who] : all) {
    const std::uint64_t start = p.network().value();
    const std::uint64_t end = start + (std::uint64_t{1} << (32 - p.length()));
    if (start < reach) out.push_back(who + " overlaps " + reach_owner);
    if (end > reach) {
      reach = end;
      reach_owner = who;
    }
  }
  return out;
}

}  // namespace oshi::topo
