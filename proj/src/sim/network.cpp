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

#include "oshi/sim/network.hpp"

#include <cstdio>

#include "oshi/common/error.hpp"

namespace oshi::sim {

std::size_t wire_size(const Wire& w) {
  if (const auto* f = std::get_if<net::EthernetFrame>(&w)) return f->wire_size();
  const auto& d = std::get<overlay::VxlanDatagram>(w);
  return overlay::kTunnelOverhead + d.inner.size();
}

void Node::send(net::PortId port, Wire wire) { network_->transmit(index_, port, std::move(wire)); }
Simulator& Node::sim() { return network_->sim(); }
const Simulator& Node::sim() const { return network_->sim(); }
void Node::log(const std::string& message) { network_->log(*this, message); }

NodeIndex Network::add_node(std::unique_ptr<Node> node) {
  if (find_node(node->id())) throw Error(Errc::InvalidArgument, "duplicate node " + node->id());
  node->network_ = this;
  node->index_ = nodes_.size();
  nodes_.push_back(std::move(node));
  port_links_.emplace_back();
  return nodes_.size() - 1;
}

LinkIndex Network::add_link(std::string id, LinkEndpoint a, LinkEndpoint b, SimTime delay,
                            std::optional<double> capacity_pps) {
  if (a.node >= nodes_.size() || b.node >= nodes_.size()) {
    throw Error(Errc::UnknownNode, "link " + id + " references an unknown node");
  }
  if (link_at(a.node, a.port) || link_at(b.node, b.port)) {
    throw Error(Errc::InvalidArgument, "link " + id + " reuses a wired port");
  }
  if (capacity_pps && !(*capacity_pps > 0)) {
    throw Error(Errc::InvalidArgument, "link " + id + " capacity must be > 0");
  }
  const LinkIndex li = links_.size();
  Link l;
  l.id = std::move(id);
  l.a = a;
  l.b = b;
  l.delay = delay;
  l.capacity_pps = capacity_pps;
  links_.push_back(std::move(l));
  port_links_[a.node].emplace_back(a.port, li);
  port_links_[b.node].emplace_back(b.port, li);
  return li;
}

std::optional<NodeIndex> Network::find_node(const std::string& id) const {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i]->id() == id) return i;
  }
  return std::nullopt;
}

std::optional<LinkIndex> Network::find_link(const std::string& id) const {
  for (LinkIndex i = 0; i < links_.size(); ++i) {
    if (links_[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<LinkIndex> Network::link_at(NodeIndex node, net::PortId port) const {
  for (const auto& [p, l] : port_links_.at(node)) {
    if (p == port) return l;
  }
  return std::nullopt;
}

void Network::start_all() {
  for (auto& n : nodes_) n->start();
}

void Network::transmit(NodeIndex from, net::PortId port, Wire wire) {
  if (tap_) tap_(TapRecord{sim_.now(), from, port, wire});
  const auto li = link_at(from, port);
  if (!li) return;
  Link& l = links_[*li];
  if (!l.up) {
    ++l.counters.dropped_down;
    return;
  }
  const int dir = (l.a.node == from && l.a.port == port) ? 0 : 1;
  SimTime depart = sim_.now();
  if (l.capacity_pps) {
    // Serialization at the link's packet rate; the queue is unbounded.
    depart = std::max(depart, l.busy_until[dir]);
    l.busy_until[dir] = depart + from_seconds(1.0 / *l.capacity_pps);
  }
  const LinkIndex link = *li;
  sim_.schedule_at(depart + l.delay, [this, link, dir, w = std::move(wire)]() mutable {
    deliver(link, dir, std::move(w));
  });
}

void Network::deliver(LinkIndex link, int dir, Wire wire) {
  Link& l = links_[link];
  if (!l.up) {
    ++l.counters.dropped_down;
    return;
  }
  ++l.counters.delivered;
  const LinkEndpoint& to = dir == 0 ? l.b : l.a;
  nodes_[to.node]->receive(to.port, std::move(wire));
}

void Network::set_link_up(LinkIndex link, bool up) {
  Link& l = links_.at(link);
  if (l.up == up) return;
  l.up = up;
  if (log_enabled_) log_.push_back(stamp() + "link " + l.id + (up ? " up" : " down"));
  nodes_[l.a.node]->carrier(l.a.port, up);
  nodes_[l.b.node]->carrier(l.b.port, up);
}

void Network::log(const Node& node, const std::string& message) {
  if (!log_enabled_) return;
  log_.push_back(stamp() + node.id() + " " + message);
}

std::string Network::stamp() const {
  char t[32];
  std::snprintf(t, sizeof t, "t=%.6f ", to_seconds(sim_.now()));
  return t;
}

}  // namespace oshi::sim
