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
#include <span>

#include "oshi/routing/fib.hpp"
#include "oshi/routing/lsdb.hpp"

namespace oshi::routing {

/// A numbered point-to-point interface (always a /30 from the address plan).
/// Passive interfaces are advertised but never run hellos.
struct RouterInterface {
  net::PortId port;
  net::Ipv4Addr address;
  net::Ipv4Prefix subnet;
  std::uint32_t cost = 1;
  bool passive = false;
};

/// The other host address of a /30 point-to-point subnet.
net::Ipv4Addr p2p_peer_address(const net::Ipv4Prefix& subnet, net::Ipv4Addr self);

/// Shortest-path-first over the database, rooted at `self`.
///
/// An adjacency is used only when both ends advertise it (same prefix).
/// Equal-cost candidates resolve to the smallest first-hop router id, then
/// the smallest outgoing port, so results are deterministic and single-path.
/// Prefixes on the self router's own interfaces become connected routes.
Fib run_spf(const LinkStateDb& db, RouterId self, std::span<const RouterInterface> interfaces);

}  // namespace oshi::routing
