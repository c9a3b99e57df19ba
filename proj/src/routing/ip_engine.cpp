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

#include "oshi/routing/ip_engine.hpp"

namespace oshi::routing {

std::string_view to_string(DropReason r) {
  switch (r) {
    case DropReason::NoRoute: return "NoRoute";
    case DropReason::TtlExpired: return "TtlExpired";
  }
  return "NoRoute";
}

void IpEngine::set_dynamic_routes(const Fib& fib) {
  dynamic_ = fib;
  rebuild();
}

void IpEngine::add_static_route(const FibEntry& entry) {
  static_.push_back(entry);
  rebuild();
}

void IpEngine::rebuild() {
  fib_ = dynamic_;
  for (const auto& s : static_) fib_.upsert(s);
}

ForwardResult IpEngine::forward(net::Ipv4Packet packet, net::PortId /*in_port*/) const {
  if (is_local(packet.dst)) return Delivered{std::move(packet)};
  const FibEntry* e = fib_.lookup(packet.dst);
  if (e == nullptr) return Dropped{DropReason::NoRoute};
  if (packet.ttl <= 1) return Dropped{DropReason::TtlExpired};
  --packet.ttl;
  const net::Ipv4Addr nh = e->next_hop.is_unspecified() ? packet.dst : e->next_hop;
  return Forwarded{e->port, nh, std::move(packet)};
}

}  // namespace oshi::routing
