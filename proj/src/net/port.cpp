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

#include "oshi/net/port.hpp"

#include <map>
#include <set>
#include <string>

#include "oshi/common/error.hpp"

namespace oshi::net {

std::string_view to_string(PortKind kind) {
  switch (kind) {
    case PortKind::Physical: return "physical";
    case PortKind::Virtual: return "virtual";
    case PortKind::Tunnel: return "tunnel";
  }
  return "physical";
}

PortKind port_kind_from_string(std::string_view text) {
  if (text == "physical") return PortKind::Physical;
  if (text == "virtual") return PortKind::Virtual;
  if (text == "tunnel") return PortKind::Tunnel;
  throw Error(Errc::InvalidArgument, "unknown port kind '" + std::string(text) + "'");
}

void check_port_pairing(std::span<const PortDesc> ports) {
  std::map<PortId, const PortDesc*> by_id;
  for (const auto& p : ports) {
    if (!by_id.emplace(p.id, &p).second) {
      throw Error(Errc::PortPairing, "duplicate port " + std::to_string(p.id.value()));
    }
  }
  std::set<PortId> claimed;
  for (const auto& p : ports) {
    if (!p.paired) {
      throw Error(Errc::PortPairing, "port " + std::to_string(p.id.value()) + " is unpaired");
    }
    auto it = by_id.find(*p.paired);
    if (it == by_id.end() || !it->second->paired || *it->second->paired != p.id) {
      throw Error(Errc::PortPairing,
                  "port " + std::to_string(p.id.value()) + " has no reciprocal pair");
    }
    const bool self_virtual = p.kind == PortKind::Virtual;
    const bool peer_virtual = it->second->kind == PortKind::Virtual;
    if (self_virtual == peer_virtual) {
      throw Error(Errc::PortPairing, "port " + std::to_string(p.id.value()) +
                                         " must pair virtual with physical/tunnel");
    }
    if (!claimed.insert(*p.paired).second) {
      throw Error(Errc::PortPairing, "port " + std::to_string(p.paired->value()) +
                                         " paired more than once");
    }
  }
}

void LinkSpec::validate() const {
  if (a.node == b.node) {
    throw Error(Errc::InvalidArgument, "link endpoints on the same node '" + a.node + "'");
  }
  if (cost < 1) throw Error(Errc::InvalidArgument, "link cost must be >= 1");
  if (delay < SimTime::zero()) throw Error(Errc::InvalidArgument, "negative link delay");
  if (capacity_pps && *capacity_pps <= 0) {
    throw Error(Errc::InvalidArgument, "capacity_pps must be positive");
  }
}

}  // namespace oshi::net
