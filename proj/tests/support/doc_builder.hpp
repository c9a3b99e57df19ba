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

#include <map>
#include <string>

#include "oshi/topo/topology.hpp"

namespace oshi::testing {

/// Small fluent builder for hand-written test topologies. Ports are
/// numbered per node in the order links are added, starting at 1.
class DocBuilder {
 public:
  DocBuilder& node(const std::string& id, node::NodeRole role) {
    doc_.nodes.push_back(topo::NodeDecl{id, role, {}, std::nullopt, nullptr});
    return *this;
  }
  DocBuilder& cr(const std::string& id) { return node(id, node::NodeRole::CoreOshi); }
  DocBuilder& pe(const std::string& id) { return node(id, node::NodeRole::AccessOshi); }
  DocBuilder& ce(const std::string& id) { return node(id, node::NodeRole::CustomerEdge); }
  DocBuilder& router(const std::string& id) { return node(id, node::NodeRole::PlainRouter); }

  DocBuilder& link(const std::string& a, const std::string& b,
                   topo::Overlay overlay = topo::Overlay::None, std::uint32_t cost = 1) {
    topo::LinkDecl l;
    l.id = "L" + std::to_string(doc_.links.size() + 1);
    l.a = net::LinkEnd{a, net::PortId(++ports_[a])};
    l.b = net::LinkEnd{b, net::PortId(++ports_[b])};
    l.overlay = overlay;
    l.cost = cost;
    doc_.links.push_back(l);
    return *this;
  }
  DocBuilder& tagged(std::uint16_t ip_vid = 1) {
    doc_.coexistence = node::CoexistenceMode::tagged(ip_vid);
    return *this;
  }
  DocBuilder& controller(const std::string& id) {
    doc_.controller = id;
    return *this;
  }
  /// Port the most recent link from `a` to `b` uses on `a`.
  net::PortId port(const std::string& a, const std::string& b) const {
    for (auto it = doc_.links.rbegin(); it != doc_.links.rend(); ++it) {
      if (it->a.node == a && it->b.node == b) return it->a.port;
      if (it->b.node == a && it->a.node == b) return it->b.port;
    }
    return net::PortId(0);
  }
  topo::TopologyDoc& doc() { return doc_; }
  const topo::TopologyDoc& doc() const { return doc_; }

 private:
  topo::TopologyDoc doc_;
  std::map<std::string, std::uint32_t> ports_;
};

/// CE1 - PE1 - CR1 - ... - CRk - PE2 - CE2; CR1..CRk form a chain.
inline DocBuilder chain(int core, topo::Overlay overlay = topo::Overlay::None) {
  DocBuilder b;
  b.pe("PE1").pe("PE2").ce("CE1").ce("CE2");
  for (int i = 1; i <= core; ++i) b.cr("CR" + std::to_string(i));
  b.link("CE1", "PE1");
  std::string prev = "PE1";
  for (int i = 1; i <= core; ++i) {
    const std::string cur = "CR" + std::to_string(i);
    b.link(prev, cur, overlay);
    prev = cur;
  }
  b.link(prev, "PE2", overlay);
  b.link("PE2", "CE2");
  return b;
}

}  // namespace oshi::testing
