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
#include <optional>
#include <string>
#include <vector>

#include "oshi/net/addr.hpp"
#include "oshi/net/port.hpp"

namespace oshi::routing {

struct FibEntry {
  net::Ipv4Prefix prefix;
  net::Ipv4Addr next_hop;  // unspecified for directly connected prefixes
  net::PortId port;
  std::uint32_t cost = 0;

  friend bool operator==(const FibEntry&, const FibEntry&) = default;
};

/// Longest-prefix-match forwarding table; at most one entry per prefix.
class Fib {
 public:
  /// Adds or replaces the entry for entry.prefix.
  void upsert(const FibEntry& entry);
  bool erase(const net::Ipv4Prefix& prefix);

  const FibEntry* lookup(net::Ipv4Addr dst) const;
  const FibEntry* find(const net::Ipv4Prefix& prefix) const;

  /// Sorted by prefix length (longest first), then network address.
  const std::vector<FibEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// One line per entry: "<prefix> via <next-hop>|connected port <n> cost <c>".
  std::string dump() const;

  friend bool operator==(const Fib&, const Fib&) = default;

 private:
  std::vector<FibEntry> entries_;
};

}  // namespace oshi::routing
