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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oshi/common/time.hpp"
#include "oshi/net/ipv4.hpp"
#include "oshi/routing/fib.hpp"
#include "oshi/routing/lsdb.hpp"
#include "oshi/routing/spf.hpp"

namespace oshi::routing {

struct Timers {
  SimTime hello = std::chrono::seconds(2);
  SimTime dead = std::chrono::seconds(8);
  SimTime lsa_min_interval = std::chrono::seconds(1);
};

struct Hello {
  RouterId router;
  net::Ipv4Addr address;
  std::vector<RouterId> seen;
};

enum class NeighborState { Down, Init, Up };

std::string_view to_string(NeighborState s);

struct NeighborChange {
  NeighborState from = NeighborState::Down;
  NeighborState to = NeighborState::Down;
  bool ignored = false;

  bool changed() const { return from != to; }
};

struct Neighbor {
  RouterId id;
  net::Ipv4Addr address;
  NeighborState state = NeighborState::Down;
  SimTime last_hello{};
};

/// Services the daemon needs from the node it runs on.
class RouterHost {
 public:
  virtual ~RouterHost() = default;
  virtual SimTime now() const = 0;
  virtual void schedule(SimTime delay, std::function<void()> fn) = 0;
  /// Sends a link-local routing packet out of one interface.
  virtual void send_routing(net::PortId port, net::Ipv4Packet packet) = 0;
  virtual void fib_changed(const Fib& fib) = 0;
  virtual void log(const std::string& message) = 0;
};

/// Link-state routing on point-to-point interfaces: hellos, reliable-enough
/// flooding (full database exchange when an adjacency comes up), and SPF.
class RoutingDaemon {
 public:
  struct Config {
    RouterId router_id;
    std::vector<RouterInterface> interfaces;
    /// Extra prefixes advertised as stubs (e.g. redistributed static routes).
    std::vector<LsaLink> stubs;
    Timers timers;
    /// Offset of the first hello on each interface.
    SimTime hello_offset{};
  };

  RoutingDaemon(Config config, RouterHost& host);

  RoutingDaemon(const RoutingDaemon&) = delete;
  RoutingDaemon& operator=(const RoutingDaemon&) = delete;

  void start();

  /// Dispatches a received routing packet (hello or link-state update).
  void receive(const net::Ipv4Packet& packet, net::PortId in_port);

  NeighborChange process_hello(const Hello& hello, net::PortId in_port);

  /// Returns the interfaces the LSA was re-flooded on (empty when stale).
  std::set<net::PortId> flood_lsa(const Lsa& lsa, net::PortId in_port);

  /// Carrier change on an interface. Down drops the adjacency at once and
  /// withdraws the interface prefix; up resumes hellos.
  void set_interface_state(net::PortId port, bool up);
  bool interface_up(net::PortId port) const { return !down_.contains(port); }

  RouterId router_id() const { return config_.router_id; }
  const LinkStateDb& lsdb() const { return lsdb_; }
  const Fib& fib() const { return fib_; }
  std::uint64_t own_seq() const { return own_seq_; }
  const std::vector<RouterInterface>& interfaces() const { return config_.interfaces; }
  std::optional<Neighbor> neighbor(net::PortId port) const;
  std::uint64_t ignored_hellos() const { return ignored_hellos_; }
  std::uint64_t spf_runs() const { return spf_runs_; }

  /// True while an origination or SPF run is scheduled but not yet done.
  bool busy() const { return origination_pending_ || spf_pending_; }

  static std::vector<std::uint8_t> encode_hello(const Hello& hello);
  static std::vector<std::uint8_t> encode_update(const std::vector<Lsa>& lsas);

 private:
  const RouterInterface* interface(net::PortId port) const;
  void send_hello(net::PortId port);
  void hello_tick(net::PortId port);
  void dead_check(net::PortId port);
  void request_origination();
  void originate();
  void request_spf();
  void send_update(net::PortId port, const std::vector<Lsa>& lsas);
  void neighbor_down(net::PortId port);

  Config config_;
  RouterHost& host_;
  LinkStateDb lsdb_;
  Fib fib_;
  std::map<net::PortId, Neighbor> neighbors_;
  std::set<net::PortId> down_;
  std::uint64_t own_seq_ = 0;
  std::optional<SimTime> last_origination_;
  bool origination_pending_ = false;
  bool spf_pending_ = false;
  std::uint64_t ignored_hellos_ = 0;
  std::uint64_t spf_runs_ = 0;
};

}  // namespace oshi::routing
