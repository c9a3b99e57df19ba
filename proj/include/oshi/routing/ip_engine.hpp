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
#include <set>
#include <string_view>
#include <variant>
#include <vector>

#include "oshi/net/ipv4.hpp"
#include "oshi/routing/fib.hpp"

namespace oshi::routing {

enum class DropReason { NoRoute, TtlExpired };

std::string_view to_string(DropReason r);

struct Forwarded {
  net::PortId port;
  net::Ipv4Addr next_hop;
  net::Ipv4Packet packet;
};
struct Delivered {
  net::Ipv4Packet packet;
};
struct Dropped {
  DropReason reason;
};

using ForwardResult = std::variant<Forwarded, Delivered, Dropped>;

/// IP forwarding engine. On an OSHI node every port it sees is a virtual
/// port of the SCS; on a plain router the ports are physical.
class IpEngine {
 public:
  void add_local_address(net::Ipv4Addr addr) { local_.insert(addr); }
  bool is_local(net::Ipv4Addr addr) const {
    return addr == net::kAllRouters || local_.contains(addr);
  }

  /// Routes learnt by the routing daemon; replaces the previous set.
  void set_dynamic_routes(const Fib& fib);
  void add_static_route(const FibEntry& entry);

  const Fib& fib() const { return fib_; }

  /// Longest-prefix match; ttl is decremented on the forwarded copy.
  ForwardResult forward(net::Ipv4Packet packet, net::PortId in_port) const;

  /// Route lookup for locally originated packets (no ttl change).
  const FibEntry* route(net::Ipv4Addr dst) const { return fib_.lookup(dst); }

 private:
  void rebuild();

  std::set<net::Ipv4Addr> local_;
  Fib dynamic_;
  std::vector<FibEntry> static_;
  Fib fib_;
};

}  // namespace oshi::routing
