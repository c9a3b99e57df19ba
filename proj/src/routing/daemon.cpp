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

#include "oshi/routing/daemon.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "oshi/common/error.hpp"

namespace oshi::routing {

using nlohmann::json;

std::string_view to_string(NeighborState s) {
  switch (s) {
    case NeighborState::Down: return "Down";
    case NeighborState::Init: return "Init";
    case NeighborState::Up: return "Up";
  }
  return "Down";
}

namespace {

std::vector<std::uint8_t> to_bytes(const json& j) {
  const std::string s = j.dump();
  return {s.begin(), s.end()};
}

}  // namespace

std::vector<std::uint8_t> RoutingDaemon::encode_hello(const Hello& hello) {
  json seen = json::array();
  for (const auto& r : hello.seen) seen.push_back(r.to_string());
  return to_bytes({{"type", "hello"},
                   {"rid", hello.router.to_string()},
                   {"addr", hello.address.to_string()},
                   {"seen", std::move(seen)}});
}

std::vector<std::uint8_t> RoutingDaemon::encode_update(const std::vector<Lsa>& lsas) {
  json arr = json::array();
  for (const auto& l : lsas) arr.push_back(to_json(l));
  return to_bytes({{"type", "lsu"}, {"lsas", std::move(arr)}});
}

RoutingDaemon::RoutingDaemon(Config config, RouterHost& host)
    : config_(std::move(config)), host_(host) {}

const RouterInterface* RoutingDaemon::interface(net::PortId port) const {
  for (const auto& i : config_.interfaces) {
    if (i.port == port) return &i;
  }
  return nullptr;
}

std::optional<Neighbor> RoutingDaemon::neighbor(net::PortId port) const {
  auto it = neighbors_.find(port);
  if (it == neighbors_.end()) return std::nullopt;
  return it->second;
}

void RoutingDaemon::start() {
  originate();
  for (const auto& i : config_.interfaces) {
    if (i.passive) continue;
    const auto port = i.port;
    host_.schedule(config_.hello_offset, [this, port] { hello_tick(port); });
  }
}

void RoutingDaemon::hello_tick(net::PortId port) {
  send_hello(port);
  host_.schedule(config_.timers.hello, [this, port] { hello_tick(port); });
}

void RoutingDaemon::send_hello(net::PortId port) {
  const auto* ifc = interface(port);
  if (ifc == nullptr || down_.contains(port)) return;
  Hello hello{config_.router_id, ifc->address, {}};
  auto it = neighbors_.find(port);
  if (it != neighbors_.end() && it->second.state != NeighborState::Down) {
    hello.seen.push_back(it->second.id);
  }
  net::Ipv4Packet p{ifc->address, net::kAllRouters, 1, net::kProtoLinkState, encode_hello(hello)};
  host_.send_routing(port, std::move(p));
}

void RoutingDaemon::receive(const net::Ipv4Packet& packet, net::PortId in_port) {
  json j = json::parse(packet.payload.begin(), packet.payload.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::Malformed, "bad routing packet");
  const auto type = j.value("type", std::string());
  try {
    if (type == "hello") {
      Hello h;
      h.router = net::Ipv4Addr::parse(j.at("rid").get<std::string>());
      h.address = net::Ipv4Addr::parse(j.at("addr").get<std::string>());
      for (const auto& s : j.at("seen")) h.seen.push_back(net::Ipv4Addr::parse(s.get<std::string>()));
      process_hello(h, in_port);
    } else if (type == "lsu") {
      if (interface(in_port) == nullptr) {
        ++ignored_hellos_;
        return;
      }
      for (const auto& l : j.at("lsas")) flood_lsa(lsa_from_json(l), in_port);
    } else {
      throw Error(Errc::Malformed, "unknown routing packet type '" + type + "'");
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Malformed, std::string("bad routing packet: ") + e.what());
  }
}

NeighborChange RoutingDaemon::process_hello(const Hello& hello, net::PortId in_port) {
  const auto* ifc = interface(in_port);
  if (ifc == nullptr || ifc->passive) {
    ++ignored_hellos_;
    return NeighborChange{NeighborState::Down, NeighborState::Down, true};
  }

  auto it = neighbors_.find(in_port);
  if (it != neighbors_.end() && it->second.id != hello.router) {
    neighbor_down(in_port);
    it = neighbors_.end();
  }
  if (it == neighbors_.end()) {
    it = neighbors_.emplace(in_port, Neighbor{hello.router, hello.address}).first;
  }
  auto& n = it->second;
  const NeighborState from = n.state;
  n.address = hello.address;
  n.last_hello = host_.now();

  const bool two_way =
      std::find(hello.seen.begin(), hello.seen.end(), config_.router_id) != hello.seen.end();
  n.state = two_way ? NeighborState::Up : NeighborState::Init;
  const NeighborState to = n.state;

  host_.schedule(config_.timers.dead, [this, in_port] { dead_check(in_port); });

  if (from != to) {
    host_.log("nbr " + hello.router.to_string() + " port " + std::to_string(in_port.value()) +
              " " + std::string(to_string(from)) + "->" + std::string(to_string(to)));
  }
  if (to == NeighborState::Up && from != NeighborState::Up) {
    request_origination();
    std::vector<Lsa> all;
    for (const auto& [origin, lsa] : lsdb_.lsas()) all.push_back(lsa);
    send_update(in_port, all);
    send_hello(in_port);
  } else if (from == NeighborState::Up && to != NeighborState::Up) {
    request_origination();
  } else if (from == NeighborState::Down && to == NeighborState::Init) {
    send_hello(in_port);
  }
  return NeighborChange{from, to, false};
}

void RoutingDaemon::dead_check(net::PortId port) {
  auto it = neighbors_.find(port);
  if (it == neighbors_.end()) return;
  if (host_.now() - it->second.last_hello >= config_.timers.dead) neighbor_down(port);
}

void RoutingDaemon::neighbor_down(net::PortId port) {
  auto it = neighbors_.find(port);
  if (it == neighbors_.end()) return;
  const bool was_up = it->second.state == NeighborState::Up;
  host_.log("nbr " + it->second.id.to_string() + " port " + std::to_string(port.value()) + " " +
            std::string(to_string(it->second.state)) + "->Down");
  neighbors_.erase(it);
  if (was_up) request_origination();
}

void RoutingDaemon::request_origination() {
  if (origination_pending_) return;
  const SimTime now = host_.now();
  if (!last_origination_ || now - *last_origination_ >= config_.timers.lsa_min_interval) {
    originate();
    return;
  }
  origination_pending_ = true;
  const SimTime wait = *last_origination_ + config_.timers.lsa_min_interval - now;
  host_.schedule(wait, [this] {
    origination_pending_ = false;
    originate();
  });
}

void RoutingDaemon::originate() {
  Lsa lsa;
  lsa.origin = config_.router_id;
  lsa.seq = ++own_seq_;
  for (const auto& i : config_.interfaces) {
    if (down_.contains(i.port)) continue;
    if (i.passive) {
      lsa.links.push_back(LsaLink{net::Ipv4Addr{}, i.subnet, i.cost});
      continue;
    }
    auto it = neighbors_.find(i.port);
    if (it != neighbors_.end() && it->second.state == NeighborState::Up) {
      lsa.links.push_back(LsaLink{it->second.id, i.subnet, i.cost});
    }
  }
  lsa.links.push_back(LsaLink{net::Ipv4Addr{}, net::Ipv4Prefix(config_.router_id, 32), 0});
  for (const auto& s : config_.stubs) lsa.links.push_back(s);

  lsdb_.install(lsa);
  last_origination_ = host_.now();
  host_.log("lsa originate " + config_.router_id.to_string() + " seq " + std::to_string(lsa.seq));
  for (const auto& [port, n] : neighbors_) {
    if (n.state == NeighborState::Up) send_update(port, {lsa});
  }
  request_spf();
}

std::set<net::PortId> RoutingDaemon::flood_lsa(const Lsa& lsa, net::PortId in_port) {
  if (lsa.origin == config_.router_id) {
    // A stale copy of our own LSA survived somewhere; jump past it.
    if (lsa.seq > own_seq_) {
      own_seq_ = lsa.seq;
      request_origination();
    }
    return {};
  }
  if (!lsdb_.install(lsa)) return {};
  std::set<net::PortId> flooded;
  for (const auto& [port, n] : neighbors_) {
    if (n.state == NeighborState::Up && port != in_port) {
      send_update(port, {lsa});
      flooded.insert(port);
    }
  }
  request_spf();
  return flooded;
}

void RoutingDaemon::set_interface_state(net::PortId port, bool up) {
  if (interface(port) == nullptr) return;
  if (up) {
    if (down_.erase(port) == 0) return;
    host_.log("if port " + std::to_string(port.value()) + " up");
    send_hello(port);
  } else {
    if (!down_.insert(port).second) return;
    host_.log("if port " + std::to_string(port.value()) + " down");
    neighbor_down(port);
  }
  request_origination();
}

void RoutingDaemon::send_update(net::PortId port, const std::vector<Lsa>& lsas) {
  const auto* ifc = interface(port);
  if (ifc == nullptr || lsas.empty()) return;
  net::Ipv4Packet p{ifc->address, net::kAllRouters, 1, net::kProtoLinkState, encode_update(lsas)};
  host_.send_routing(port, std::move(p));
}

void RoutingDaemon::request_spf() {
  if (spf_pending_) return;
  spf_pending_ = true;
  host_.schedule(SimTime::zero(), [this] {
    spf_pending_ = false;
    std::vector<RouterInterface> up;
    for (const auto& i : config_.interfaces) {
      if (!down_.contains(i.port)) up.push_back(i);
    }
    fib_ = run_spf(lsdb_, config_.router_id, up);
    ++spf_runs_;
    host_.fib_changed(fib_);
  });
}

}  // namespace oshi::routing
