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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oshi/common/time.hpp"
#include "oshi/net/port.hpp"

namespace oshi::ctrl {

struct SwitchPort {
  net::Dpid dpid;
  net::PortId port;
  friend auto operator<=>(const SwitchPort&, const SwitchPort&) = default;
};

/// Undirected adjacency; a < b always.
struct ViewLink {
  SwitchPort a;
  SwitchPort b;
  static ViewLink make(SwitchPort x, SwitchPort y) { return x < y ? ViewLink{x, y} : ViewLink{y, x}; }
  friend auto operator<=>(const ViewLink&, const ViewLink&) = default;
};

/// Layer-2 adjacencies learnt from discovery probes. A link is reported only
/// once probes have crossed it in both directions.
class TopologyView {
 public:
  void add_switch(net::Dpid dpid) { switches_.insert(dpid); }
  bool has_switch(net::Dpid dpid) const { return switches_.contains(dpid); }
  const std::set<net::Dpid>& switches() const { return switches_; }

  /// A probe sent from `from` was received at `to`.
  void observe(SwitchPort from, SwitchPort to, SimTime at);
  /// Forgets every observation touching the port; returns the links lost.
  std::vector<ViewLink> port_down(SwitchPort port);
  /// Forgets observations older than `timeout`; returns the links lost.
  std::vector<ViewLink> expire(SimTime now, SimTime timeout);

  std::vector<ViewLink> links() const;
  bool contains(const ViewLink& link) const;

  friend bool operator==(const TopologyView&, const TopologyView&) = default;

 private:
  std::set<net::Dpid> switches_;
  std::map<std::pair<SwitchPort, SwitchPort>, SimTime> seen_;  // directed
};

/// Per-link VLAN id pools for SBPs.
class TagAllocator {
 public:
  /// Lowest vid in 1..4094 that is neither reserved, allocated on the link,
  /// nor in `exclude`.
  std::optional<std::uint16_t> lowest_free(const ViewLink& link,
                                           const std::set<std::uint16_t>& reserved,
                                           const std::set<std::uint16_t>& exclude = {}) const;
  /// Throws InvalidArgument when already allocated.
  void allocate(const ViewLink& link, std::uint16_t vid);
  /// Throws InvalidArgument when not allocated.
  void release(const ViewLink& link, std::uint16_t vid);
  bool allocated(const ViewLink& link, std::uint16_t vid) const;

  const std::map<ViewLink, std::set<std::uint16_t>>& state() const { return allocated_; }
  friend bool operator==(const TagAllocator&, const TagAllocator&) = default;

 private:
  std::map<ViewLink, std::set<std::uint16_t>> allocated_;  // no empty sets
};

}  // namespace oshi::ctrl
