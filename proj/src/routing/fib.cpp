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

#include "oshi/routing/fib.hpp"

#include <algorithm>

namespace oshi::routing {

namespace {

bool before(const net::Ipv4Prefix& a, const net::Ipv4Prefix& b) {
  if (a.length() != b.length()) return a.length() > b.length();
  return a.network() < b.network();
}

}  // namespace

void Fib::upsert(const FibEntry& entry) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), entry.prefix,
                             [](const FibEntry& e, const net::Ipv4Prefix& p) {
                               return before(e.prefix, p);
                             });
  if (it != entries_.end() && it->prefix == entry.prefix) {
    *it = entry;
  } else {
    entries_.insert(it, entry);
  }
}

bool Fib::erase(const net::Ipv4Prefix& prefix) {
  return std::erase_if(entries_, [&](const FibEntry& e) { return e.prefix == prefix; }) > 0;
}

const FibEntry* Fib::lookup(net::Ipv4Addr dst) const {
  for (const auto& e : entries_) {
    if (e.prefix.contains(dst)) return &e;
  }
  return nullptr;
}

const FibEntry* Fib::find(const net::Ipv4Prefix& prefix) const {
  for (const auto& e : entries_) {
    if (e.prefix == prefix) return &e;
  }
  return nullptr;
}

std::string Fib::dump() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.prefix.to_string() + " via " +
           (e.next_hop.is_unspecified() ? std::string("connected") : e.next_hop.to_string()) +
           " port " + std::to_string(e.port.value()) + " cost " + std::to_string(e.cost) + "\n";
  }
  return out;
}

}  // namespace oshi::routing
