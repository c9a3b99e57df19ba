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

#include "oshi/topo/deployment.hpp"

#include <numeric>

#include "oshi/common/error.hpp"
#include "oshi/common/rng.hpp"

namespace oshi::topo {

using node::NodeRole;
using nlohmann::json;

namespace {

constexpr SimTime kConvergePoll = std::chrono::milliseconds(100);
constexpr SimTime kFinePoll = std::chrono::milliseconds(1);

overlay::TunnelKind tunnel_kind(Overlay o) {
  return o == Overlay::Vpn ? overlay::TunnelKind::UserspaceVpn : overlay::TunnelKind::VxlanKernel;
}

[[noreturn]] void rethrow_with(const std::string& context, const Error& e) {
  throw Error(e.code(), context + ": " + e.what());
}

}  // namespace

Deployment::Deployment(TopologyDoc doc, DeployOptions options)
    : doc_(std::move(doc)),
      options_(options),
      plan_(AddressPlan::build(doc_)),
      network_(sim_) {}

std::unique_ptr<Deployment> Deployment::deploy(const TopologyDoc& doc, DeployOptions options) {
  const auto violations = validate(doc);
  if (!violations.empty()) {
    std::string msg = "invalid topology:";
    for (const auto& v : violations) msg += " " + v.path + ": " + v.message + ";";
    msg.pop_back();
    throw Error(Errc::Schema, msg);
  }
  std::unique_ptr<Deployment> d(new Deployment(doc, options));
  d->build();
  if (!d->converge(options.converge_limit)) {
    throw Error(Errc::Timeout,
                std::string("deployment did not converge within ") +
                    std::to_string(to_seconds(options.converge_limit)) + " s (" +
                    (d->routing_converged() ? "controller discovery" : "routing") +
                    " incomplete)");
  }
  d->deploy_time_ = d->now();
  for (const auto& v : doc.vlls) {
    try {
      d->push_vll(ctrl::VllRequest{v.id, v.end_a, v.end_b});
    } catch (const Error& e) {
      rethrow_with("vll " + (v.id.empty() ? v.end_a.to_string() : v.id), e);
    }
  }
  return d;
}

node::NodeConfig Deployment::node_config(const NodeDecl& decl, std::size_t index) const {
  node::NodeConfig c;
  c.id = decl.id;
  c.role = decl.role;
  c.dpid = net::Dpid(index + 1);
  c.loopback = plan_.loopback(decl.id);
  c.coexistence = doc_.coexistence;
  c.reserved_vids = decl.reserved_vids;
  c.timers = options_.timers;
  c.run_routing = decl.role != NodeRole::CustomerEdge;

  for (std::size_t li = 0; li < doc_.links.size(); ++li) {
    const auto& l = doc_.links[li];
    const bool is_a = l.a.node == decl.id;
    if (!is_a && l.b.node != decl.id) continue;
    const net::LinkEnd& self = is_a ? l.a : l.b;
    const net::LinkEnd& peer = is_a ? l.b : l.a;
    const NodeRole peer_role = doc_.find_node(peer.node)->role;
    const auto& addr = plan_.link(l.id);

    node::PortConfig p;
    p.id = self.port;
    p.address = is_a ? addr.a : addr.b;
    p.subnet = addr.subnet;
    p.cost = l.cost;
    if (node::is_oshi(decl.role)) {
      p.facing = peer_role == NodeRole::CustomerEdge ? node::PortFacing::Customer
                 : peer_role == NodeRole::PlainRouter ? node::PortFacing::Router
                                                      : node::PortFacing::Core;
    } else if (decl.role == NodeRole::CustomerEdge) {
      p.facing = node::PortFacing::Customer;
    }
    if (l.ip_vid) p.customer_ip_vid = l.ip_vid;
    if (l.overlay != Overlay::None) {
      p.kind = net::PortKind::Tunnel;
      p.tunnel = overlay::TunnelPort{c.loopback, plan_.loopback(peer.node),
                                     static_cast<std::uint32_t>(li + 1), tunnel_kind(l.overlay),
                                     self.port};
    }
    c.ports.push_back(p);

    const net::Ipv4Addr peer_addr = is_a ? addr.b : addr.a;
    if (decl.role == NodeRole::CustomerEdge && c.static_routes.empty()) {
      c.static_routes.push_back(
          node::StaticRoute{net::Ipv4Prefix::parse("0.0.0.0/0"), peer_addr, self.port, false});
    } else if (peer_role == NodeRole::CustomerEdge) {
      c.static_routes.push_back(node::StaticRoute{
          net::Ipv4Prefix(plan_.loopback(peer.node), 32), peer_addr, self.port, true});
    }
  }

  if (node::is_oshi(decl.role)) {
    c.controller = plan_.loopback(controller_node_);
    c.hosts_controller = decl.id == controller_node_;
    c.controller_config = options_.controller;
  }
  return c;
}

void Deployment::build() {
  network_.set_log_enabled(options_.log_events);
  controller_node_ = doc_.controller_node().value_or("");
  Rng rng(options_.seed);
  for (std::size_t i = 0; i < doc_.nodes.size(); ++i) {
    const auto& decl = doc_.nodes[i];
    node::NodeConfig c = node_config(decl, i);
    // Seeded phases keep hello and registration timers from aligning.
    c.hello_offset = SimTime(static_cast<SimTime::rep>(
        rng.below(static_cast<std::uint64_t>(c.timers.hello.count()))));
    c.registration_offset = SimTime(static_cast<SimTime::rep>(
        rng.below(static_cast<std::uint64_t>(std::chrono::nanoseconds(1s).count()))));
    std::unique_ptr<sim::Node> n;
    try {
      if (node::is_oshi(decl.role)) {
        n = std::make_unique<node::OshiNode>(std::move(c));
      } else {
        n = std::make_unique<node::PlainRouter>(std::move(c));
      }
    } catch (const Error& e) {
      rethrow_with("node " + decl.id, e);
    }
    index_[decl.id] = network_.add_node(std::move(n));
    dpids_[i + 1] = decl.id;
  }
  for (const auto& l : doc_.links) {
    links_[l.id] = network_.add_link(l.id, {index_.at(l.a.node), l.a.port},
                                     {index_.at(l.b.node), l.b.port}, l.delay, l.capacity_pps);
  }
  network_.start_all();
}

node::IpNode& Deployment::node(const std::string& id) {
  return const_cast<node::IpNode&>(std::as_const(*this).node(id));
}

const node::IpNode& Deployment::node(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw Error(Errc::UnknownNode, "unknown node '" + id + "'");
  return static_cast<const node::IpNode&>(network_.node(it->second));
}

node::OshiNode* Deployment::oshi(const std::string& id) {
  return dynamic_cast<node::OshiNode*>(&node(id));
}

const node::OshiNode* Deployment::oshi(const std::string& id) const {
  return dynamic_cast<const node::OshiNode*>(&node(id));
}

node::PlainRouter* Deployment::router(const std::string& id) {
  return dynamic_cast<node::PlainRouter*>(&node(id));
}

ctrl::Controller& Deployment::controller() {
  return const_cast<ctrl::Controller&>(std::as_const(*this).controller());
}

const ctrl::Controller& Deployment::controller() const {
  const node::OshiNode* n = controller_node_.empty() ? nullptr : oshi(controller_node_);
  if (n == nullptr || n->controller() == nullptr) {
    throw Error(Errc::UnknownNode, "topology has no controller");
  }
  return *n->controller();
}

net::Dpid Deployment::dpid(const std::string& node_id) const {
  for (const auto& [d, n] : dpids_) {
    if (n == node_id) return net::Dpid(d);
  }
  throw Error(Errc::UnknownNode, "unknown node '" + node_id + "'");
}

const std::string& Deployment::node_of(net::Dpid d) const {
  const auto it = dpids_.find(d.value());
  if (it == dpids_.end()) {
    throw Error(Errc::UnknownNode, "unknown dpid " + std::to_string(d.value()));
  }
  return it->second;
}

bool Deployment::routing_converged() const {
  const std::size_t n = network_.node_count();
  std::vector<const node::IpNode*> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = static_cast<const node::IpNode*>(&network_.node(i));
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t li = 0; li < network_.link_count(); ++li) {
    const auto& l = network_.link(li);
    if (!l.up) continue;
    const auto* a = nodes[l.a.node]->daemon();
    const auto* b = nodes[l.b.node]->daemon();
    if (a == nullptr || b == nullptr) continue;
    parent[find(l.a.node)] = find(l.b.node);
    // Both ends must see each other as Up on the interface facing the link.
    for (const auto& [d, end] : {std::pair{a, l.a}, std::pair{b, l.b}}) {
      const bool oshi = dynamic_cast<const node::OshiNode*>(nodes[end.node]) != nullptr;
      const net::PortId iface = oshi ? net::virtual_port_of(end.port) : end.port;
      const auto nb = d->neighbor(iface);
      if (!nb || nb->state != routing::NeighborState::Up) return false;
    }
  }
  std::map<std::size_t, std::string> digest;
  for (std::size_t i = 0; i < n; ++i) {
    const auto* d = nodes[i]->daemon();
    if (d == nullptr) continue;
    if (d->busy()) return false;
    auto [it, fresh] = digest.emplace(find(i), std::string());
    std::string mine = d->lsdb().digest();
    if (fresh) {
      it->second = std::move(mine);
    } else if (it->second != mine) {
      return false;
    }
  }
  return true;
}

std::set<ctrl::ViewLink> Deployment::expected_adjacency() const {
  std::set<ctrl::ViewLink> out;
  for (const auto& l : doc_.links) {
    if (!node::is_oshi(doc_.find_node(l.a.node)->role) ||
        !node::is_oshi(doc_.find_node(l.b.node)->role) || !link_up(l.id)) {
      continue;
    }
    out.insert(ctrl::ViewLink::make(ctrl::SwitchPort{dpid(l.a.node), l.a.port},
                                    ctrl::SwitchPort{dpid(l.b.node), l.b.port}));
  }
  return out;
}

bool Deployment::discovery_complete() const {
  if (controller_node_.empty()) return true;
  const auto& c = controller();
  std::size_t oshi_nodes = 0;
  for (const auto& n : doc_.nodes) oshi_nodes += node::is_oshi(n.role) ? 1 : 0;
  if (c.switches().size() != oshi_nodes) return false;
  const auto links = c.view().links();
  return std::set<ctrl::ViewLink>(links.begin(), links.end()) == expected_adjacency();
}

bool Deployment::converge(SimTime limit) {
  return sim_.run_while_not([this] { return routing_converged() && discovery_complete(); },
                            limit, kConvergePoll);
}

bool Deployment::ping(const std::string& src, const std::string& dst, SimTime timeout) {
  auto& s = node(src);
  const std::uint64_t id = next_ping_++;
  if (!s.ping(plan_.loopback(dst), id)) return false;
  return sim_.run_while_not([&] { return s.echo_replied(id); }, timeout, kFinePoll);
}

Reachability Deployment::reachability(const std::vector<std::string>& only, SimTime timeout) {
  std::vector<std::string> ids = only;
  if (ids.empty()) {
    for (const auto& n : doc_.nodes) ids.push_back(n.id);
  }
  struct Probe {
    node::IpNode* src;
    std::string from;
    std::string to;
    std::uint64_t id;
  };
  std::vector<Probe> probes;
  for (const auto& s : ids) {
    for (const auto& d : ids) {
      if (s == d) continue;
      Probe p{&node(s), s, d, next_ping_++};
      p.src->ping(plan_.loopback(d), p.id);
      probes.push_back(std::move(p));
    }
  }
  const auto all = [&] {
    for (const auto& p : probes) {
      if (!p.src->echo_replied(p.id)) return false;
    }
    return true;
  };
  sim_.run_while_not(all, timeout, std::chrono::milliseconds(10));
  Reachability r;
  r.pairs = probes.size();
  for (const auto& p : probes) {
    if (p.src->echo_replied(p.id)) {
      ++r.reached;
    } else {
      r.failures.emplace_back(p.from, p.to);
    }
  }
  return r;
}

bool Deployment::link_up(const std::string& link) const {
  const auto it = links_.find(link);
  if (it == links_.end()) throw Error(Errc::UnknownLink, "unknown link '" + link + "'");
  return network_.link(it->second).up;
}

SimTime Deployment::set_link_state(const std::string& link, bool up, SimTime settle) {
  const auto it = links_.find(link);
  if (it == links_.end()) throw Error(Errc::UnknownLink, "unknown link '" + link + "'");
  const SimTime start = now();
  if (network_.link(it->second).up == up) return SimTime::zero();
  network_.set_link_up(it->second, up);
  sim_.run_while_not([this] { return routing_converged(); }, settle,
                     std::chrono::milliseconds(10));
  return now() - start;
}

ctrl::VllDescriptor Deployment::push_vll(const ctrl::VllRequest& request, SimTime timeout) {
  auto& c = controller();
  const std::string id = c.push_vll(request).id;
  sim_.run_while_not(
      [&] {
        const auto* d = c.find_vll(id);
        return d == nullptr || d->state != ctrl::VllState::Pending;
      },
      timeout, kFinePoll);
  const auto* d = c.find_vll(id);
  if (d == nullptr) {
    const std::string failure = c.push_failure(id).value_or("rejected");
    const auto colon = failure.find(": ");
    const Errc code = colon == std::string::npos ? Errc::InvalidArgument
                                                 : errc_from_name(failure.substr(0, colon));
    throw Error(code, "vll " + id + " rejected by a switch: " + failure);
  }
  if (d->state == ctrl::VllState::Pending) {
    throw Error(Errc::Timeout, "vll " + id + " still pending after " +
                                   std::to_string(to_seconds(timeout)) + " s");
  }
  return *d;
}

void Deployment::delete_vll(const std::string& id, SimTime timeout) {
  auto& c = controller();
  c.delete_vll(id);
  if (!sim_.run_while_not([&] { return c.idle(); }, timeout, kFinePoll)) {
    throw Error(Errc::Timeout, "vll " + id + " removal not confirmed");
  }
}

ctrl::FlowModResult Deployment::static_flow_push(net::Dpid d, const flow::FlowEntry& entry,
                                                 SimTime timeout) {
  auto& c = controller();
  const std::uint64_t xid = c.static_flow_push(d, entry);
  if (!sim_.run_while_not([&] { return c.result(xid) != nullptr; }, timeout, kFinePoll)) {
    throw Error(Errc::Timeout, "flow_mod " + std::to_string(xid) + " not confirmed");
  }
  return *c.result(xid);
}

ctrl::Route Deployment::get_route(const std::string& src, const std::string& dst) const {
  return controller().get_route(src, dst);
}

void Deployment::inject(const std::string& node_id, net::PortId port, sim::Wire wire) {
  const auto it = index_.find(node_id);
  if (it == index_.end()) throw Error(Errc::UnknownNode, "unknown node '" + node_id + "'");
  network_.transmit(it->second, port, std::move(wire));
}

json Deployment::topology_json() const {
  json nodes = json::array();
  for (std::size_t i = 0; i < doc_.nodes.size(); ++i) {
    const auto& n = doc_.nodes[i];
    json o{{"id", n.id},
           {"role", std::string(node::to_string(n.role))},
           {"loopback", plan_.loopback(n.id).to_string()}};
    if (node::is_oshi(n.role)) o["dpid"] = i + 1;
    nodes.push_back(std::move(o));
  }
  json links = json::array();
  for (const auto& l : doc_.links) {
    links.push_back(json{{"id", l.id},
                         {"a", {{"node", l.a.node}, {"port", l.a.port.value()}}},
                         {"b", {{"node", l.b.node}, {"port", l.b.port.value()}}},
                         {"up", link_up(l.id)},
                         {"cost", l.cost},
                         {"overlay", std::string(to_string(l.overlay))},
                         {"subnet", plan_.link(l.id).subnet.to_string()}});
  }
  json discovered = json::array();
  if (!controller_node_.empty()) {
    for (const auto& l : controller().view().links()) {
      discovered.push_back(
          json{{"a", {{"node", node_of(l.a.dpid)}, {"port", l.a.port.value()}}},
               {"b", {{"node", node_of(l.b.dpid)}, {"port", l.b.port.value()}}}});
    }
  }
  return json{{"nodes", std::move(nodes)},
              {"links", std::move(links)},
              {"discovered", std::move(discovered)},
              {"controller", controller_node_}};
}

json Deployment::stats_json() const {
  const double t = to_seconds(now());
  json nodes = json::object();
  for (const auto& n : doc_.nodes) {
    const auto& nd = node(n.id);
    json j = nd.counters_json();
    j["load"] = t > 0 ? nd.meter().units(measure::kDefaultCostModel) / t : 0.0;
    nodes[n.id] = std::move(j);
  }
  return json{{"t", t}, {"nodes", std::move(nodes)}};
}

}  // namespace oshi::topo
