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

#include "oshi/routing/spf.hpp"

#include <limits>
#include <map>
#include <queue>
#include <tuple>

namespace oshi::routing {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

struct Label {
  std::uint64_t dist = kInf;
  RouterId first_hop;  // neighbor of self on the chosen path
  net::PortId port;
  net::Ipv4Addr next_hop;

  auto key() const { return std::tuple(dist, first_hop, port); }
};

bool has_back_link(const Lsa& far, RouterId near, const net::Ipv4Prefix& prefix) {
  for (const auto& l : far.links) {
    if (!l.is_stub() && l.neighbor == near && l.prefix == prefix) return true;
  }
  return false;
}

}  // namespace

net::Ipv4Addr p2p_peer_address(const net::Ipv4Prefix& subnet, net::Ipv4Addr self) {
  const auto first = subnet.host(1);
  return self == first ? subnet.host(2) : first;
}

Fib run_spf(const LinkStateDb& db, RouterId self, std::span<const RouterInterface> interfaces) {
  Fib fib;
  const Lsa* own = db.find(self);
  if (own == nullptr) return fib;

  std::map<net::Ipv4Prefix, const RouterInterface*> iface_by_subnet;
  for (const auto& i : interfaces) iface_by_subnet.emplace(i.subnet, &i);

  std::map<RouterId, Label> labels;
  labels[self].dist = 0;
  using Item = std::pair<std::uint64_t, RouterId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(0, self);
  std::vector<RouterId> order;
  std::map<RouterId, bool> done;

  while (!queue.empty()) {
    auto [dist, u] = queue.top();
    queue.pop();
    if (done[u] || dist != labels[u].dist) continue;
    done[u] = true;
    order.push_back(u);
    const Lsa* lsa = db.find(u);
    if (lsa == nullptr) continue;

    for (const auto& l : lsa->links) {
      if (l.is_stub()) continue;
      const Lsa* far = db.find(l.neighbor);
      if (far == nullptr || !has_back_link(*far, u, l.prefix)) continue;

      Label cand;
      cand.dist = dist + l.cost;
      if (u == self) {
        auto it = iface_by_subnet.find(l.prefix);
        if (it == iface_by_subnet.end()) continue;
        cand.first_hop = l.neighbor;
        cand.port = it->second->port;
        cand.next_hop = p2p_peer_address(l.prefix, it->second->address);
      } else {
        const auto& via = labels[u];
        cand.first_hop = via.first_hop;
        cand.port = via.port;
        cand.next_hop = via.next_hop;
      }
      auto& cur = labels[l.neighbor];
      if (!done[l.neighbor] && cand.key() < cur.key()) {
        cur = cand;
        queue.emplace(cur.dist, l.neighbor);
      }
    }
  }

  // Own interface subnets are connected routes and always win.
  for (const auto& i : interfaces) {
    fib.upsert(FibEntry{i.subnet, net::Ipv4Addr{}, i.port, i.cost});
  }

  std::map<net::Ipv4Prefix, Label> best;
  for (RouterId u : order) {
    if (u == self) continue;
    const auto& via = labels[u];
    const Lsa* lsa = db.find(u);
    for (const auto& l : lsa->links) {
      if (iface_by_subnet.contains(l.prefix)) continue;
      Label cand = via;
      cand.dist = via.dist + l.cost;
      if (l.prefix == net::Ipv4Prefix(u, 32)) cand.dist = via.dist;
      auto [it, inserted] = best.emplace(l.prefix, cand);
      if (!inserted && cand.key() < it->second.key()) it->second = cand;
    }
  }
  for (const auto& [prefix, label] : best) {
    if (prefix == net::Ipv4Prefix(self, 32)) continue;
    fib.upsert(FibEntry{prefix, label.next_hop, label.port,
                        static_cast<std::uint32_t>(label.dist)});
  }
  return fib;
}

}  // namespace oshi::routing
