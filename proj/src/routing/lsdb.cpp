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

#include "oshi/routing/lsdb.hpp"

#include "oshi/common/error.hpp"

namespace oshi::routing {

using nlohmann::json;

json to_json(const Lsa& lsa) {
  json links = json::array();
  for (const auto& l : lsa.links) {
    links.push_back({{"nbr", l.neighbor.to_string()},
                     {"prefix", l.prefix.to_string()},
                     {"cost", l.cost}});
  }
  return json{{"origin", lsa.origin.to_string()}, {"seq", lsa.seq}, {"links", std::move(links)}};
}

Lsa lsa_from_json(const json& j) {
  try {
    Lsa lsa;
    lsa.origin = net::Ipv4Addr::parse(j.at("origin").get<std::string>());
    lsa.seq = j.at("seq").get<std::uint64_t>();
    for (const auto& l : j.at("links")) {
      lsa.links.push_back(LsaLink{net::Ipv4Addr::parse(l.at("nbr").get<std::string>()),
                                  net::Ipv4Prefix::parse(l.at("prefix").get<std::string>()),
                                  l.at("cost").get<std::uint32_t>()});
    }
    return lsa;
  } catch (const json::exception& e) {
    throw Error(Errc::Malformed, std::string("bad LSA: ") + e.what());
  } catch (const Error& e) {
    throw Error(Errc::Malformed, std::string("bad LSA: ") + e.what());
  }
}

bool LinkStateDb::install(const Lsa& lsa) {
  auto it = lsas_.find(lsa.origin);
  if (it != lsas_.end() && it->second.seq >= lsa.seq) return false;
  lsas_[lsa.origin] = lsa;
  return true;
}

const Lsa* LinkStateDb::find(RouterId origin) const {
  auto it = lsas_.find(origin);
  return it == lsas_.end() ? nullptr : &it->second;
}

std::string LinkStateDb::digest() const {
  std::string out;
  for (const auto& [origin, lsa] : lsas_) {
    out += origin.to_string() + "#" + std::to_string(lsa.seq) + ":";
    for (const auto& l : lsa.links) {
      out += l.neighbor.to_string() + "," + l.prefix.to_string() + "," +
             std::to_string(l.cost) + ";";
    }
    out += "\n";
  }
  return out;
}

}  // namespace oshi::routing
