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

#include "oshi/topo/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "oshi/common/error.hpp"
#include "oshi/common/rng.hpp"

namespace oshi::topo {

std::string_view to_string(GraphModel m) {
  switch (m) {
    case GraphModel::ErdosRenyi: return "erdos-renyi";
    case GraphModel::BarabasiAlbert: return "barabasi-albert";
    case GraphModel::Waxman: return "waxman";
  }
  return "?";
}

GraphModel graph_model_from_string(std::string_view text) {
  if (text == "er" || text == "erdos-renyi") return GraphModel::ErdosRenyi;
  if (text == "ba" || text == "barabasi-albert") return GraphModel::BarabasiAlbert;
  if (text == "waxman") return GraphModel::Waxman;
  throw Error(Errc::InvalidArgument, "unknown graph model '" + std::string(text) + "'");
}

namespace {

EdgeList erdos_renyi(int n, double p, Rng& rng) {
  EdgeList e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) e.emplace_back(u, v);
    }
  }
  return e;
}

// Preferential attachment: each new node links to m distinct existing nodes
// drawn with probability proportional to degree; the first new node links
// to all m seed nodes.
EdgeList barabasi_albert(int n, int m, Rng& rng) {
  std::set<std::pair<int, int>> edges;
  std::vector<int> repeated;
  std::vector<int> targets(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) targets[static_cast<std::size_t>(i)] = i;
  for (int v = m; v < n; ++v) {
    for (int t : targets) edges.emplace(std::min(t, v), std::max(t, v));
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), static_cast<std::size_t>(m), v);
    std::set<int> pick;
    while (pick.size() < static_cast<std::size_t>(m)) {
      pick.insert(repeated[rng.below(repeated.size())]);
    }
    targets.assign(pick.begin(), pick.end());
  }
  return EdgeList(edges.begin(), edges.end());
}

EdgeList waxman(int n, double alpha, double beta, Rng& rng) {
  std::vector<std::pair<double, double>> pos(static_cast<std::size_t>(n));
  for (auto& p : pos) {
    p.first = rng.uniform();
    p.second = rng.uniform();
  }
  const auto dist = [&](int u, int v) {
    const auto& a = pos[static_cast<std::size_t>(u)];
    const auto& b = pos[static_cast<std::size_t>(v)];
    return std::hypot(a.first - b.first, a.second - b.second);
  };
  double diameter = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) diameter = std::max(diameter, dist(u, v));
  }
  if (diameter == 0) diameter = 1;
  EdgeList e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(beta * std::exp(-dist(u, v) / (alpha * diameter)))) e.emplace_back(u, v);
    }
  }
  return e;
}

}  // namespace

EdgeList draw_graph(const GeneratorParams& prm, std::uint64_t seed) {
  if (prm.nodes < 2) throw Error(Errc::InvalidArgument, "a topology needs at least 2 nodes");
  Rng rng(seed);
  switch (prm.model) {
    case GraphModel::ErdosRenyi:
      if (!(prm.p > 0)) throw Error(Errc::Infeasible, "edge probability p must be > 0");
      if (prm.p > 1) throw Error(Errc::InvalidArgument, "edge probability p must be <= 1");
      return erdos_renyi(prm.nodes, prm.p, rng);
    case GraphModel::BarabasiAlbert:
      if (prm.m < 1 || prm.m >= prm.nodes) {
        throw Error(Errc::Infeasible, "barabasi-albert needs 1 <= m < n");
      }
      return barabasi_albert(prm.nodes, prm.m, rng);
    case GraphModel::Waxman:
      if (!(prm.alpha > 0) || !(prm.beta > 0)) {
        throw Error(Errc::Infeasible, "waxman alpha and beta must be > 0");
      }
      if (prm.beta > 1) throw Error(Errc::InvalidArgument, "waxman beta must be <= 1");
      return waxman(prm.nodes, prm.alpha, prm.beta, rng);
  }
  return {};
}

bool is_connected(int n, const EdgeList& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

TopologyDoc generate_topology(const GeneratorParams& prm) {
  if (!(prm.pe_fraction >= 0 && prm.pe_fraction <= 1)) {
    throw Error(Errc::InvalidArgument, "pe_fraction must be in [0, 1]");
  }
  if (prm.max_attempts < 1) throw Error(Errc::InvalidArgument, "max_attempts must be >= 1");
  EdgeList edges;
  std::uint64_t seed = prm.seed;
  bool connected = false;
  for (int attempt = 0; attempt < prm.max_attempts; ++attempt, ++seed) {
    edges = draw_graph(prm, seed);
    if (is_connected(prm.nodes, edges)) {
      connected = true;
      break;
    }
  }
  if (!connected) {
    throw Error(Errc::Infeasible, "no connected graph after " +
                                      std::to_string(prm.max_attempts) + " attempts");
  }

  const int n = prm.nodes;
  int pes = static_cast<int>(std::lround(prm.pe_fraction * n));
  if (prm.pe_fraction > 0) pes = std::max(pes, 1);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng pick(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < pes; ++i) {
    const auto j = static_cast<std::size_t>(i) + pick.below(static_cast<std::uint64_t>(n - i));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  std::vector<bool> is_pe(static_cast<std::size_t>(n), false);
  for (int i = 0; i < pes; ++i) is_pe[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;

  TopologyDoc doc;
  doc.coexistence = prm.coexistence;
  std::vector<std::string> name(static_cast<std::size_t>(n));
  int pe_count = 0;
  int cr_count = 0;
  for (int i = 0; i < n; ++i) {
    const bool pe = is_pe[static_cast<std::size_t>(i)];
    name[static_cast<std::size_t>(i)] =
        pe ? "PE" + std::to_string(++pe_count) : "CR" + std::to_string(++cr_count);
    doc.nodes.push_back(NodeDecl{name[static_cast<std::size_t>(i)],
                                 pe ? node::NodeRole::AccessOshi : node::NodeRole::CoreOshi,
                                 {}, std::nullopt, nullptr});
  }
  std::vector<std::uint32_t> next_port(static_cast<std::size_t>(n), 1);
  int link_no = 0;
  for (auto [u, v] : edges) {
    LinkDecl l;
    l.id = "L" + std::to_string(++link_no);
    l.a = net::LinkEnd{name[static_cast<std::size_t>(u)],
                       net::PortId(next_port[static_cast<std::size_t>(u)]++)};
    l.b = net::LinkEnd{name[static_cast<std::size_t>(v)],
                       net::PortId(next_port[static_cast<std::size_t>(v)]++)};
    l.overlay = prm.overlay;
    doc.links.push_back(std::move(l));
  }
  // CE nodes follow every OSHI node, so OSHI loopbacks depend only on the
  // graph index.
  int ce = 0;
  for (int i = 0; i < n; ++i) {
    if (!is_pe[static_cast<std::size_t>(i)]) continue;
    ++ce;
    const std::string ce_name = "CE" + std::to_string(ce);
    doc.nodes.push_back(NodeDecl{ce_name, node::NodeRole::CustomerEdge, {}, std::nullopt, nullptr});
    LinkDecl l;
    l.id = "A" + std::to_string(ce);
    l.a = net::LinkEnd{name[static_cast<std::size_t>(i)],
                       net::PortId(next_port[static_cast<std::size_t>(i)]++)};
    l.b = net::LinkEnd{ce_name, net::PortId(1)};
    doc.links.push_back(std::move(l));
  }
  return doc;
}

}  // namespace oshi::topo
