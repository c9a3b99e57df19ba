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
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/net/addr.hpp"

namespace oshi::routing {

/// Router identity; equal to the router's loopback address.
using RouterId = net::Ipv4Addr;

/// One advertised adjacency or stub. A zero neighbor marks a stub prefix.
struct LsaLink {
  RouterId neighbor;
  net::Ipv4Prefix prefix;
  std::uint32_t cost = 1;

  bool is_stub() const { return neighbor.is_unspecified(); }
  friend bool operator==(const LsaLink&, const LsaLink&) = default;
};

struct Lsa {
  RouterId origin;
  std::uint64_t seq = 0;
  std::vector<LsaLink> links;

  friend bool operator==(const Lsa&, const Lsa&) = default;
};

nlohmann::json to_json(const Lsa& lsa);
Lsa lsa_from_json(const nlohmann::json& j);

class LinkStateDb {
 public:
  /// Stores the LSA if its sequence number beats the stored one.
  bool install(const Lsa& lsa);

  const Lsa* find(RouterId origin) const;
  const std::map<RouterId, Lsa>& lsas() const { return lsas_; }
  std::size_t size() const { return lsas_.size(); }

  /// Canonical text of the whole database; equal digests mean equal contents.
  std::string digest() const;

  friend bool operator==(const LinkStateDb&, const LinkStateDb&) = default;

 private:
  std::map<RouterId, Lsa> lsas_;
};

}  // namespace oshi::routing
