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

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "oshi/flow/flow.hpp"

namespace oshi::flow {

/// The SDN capable switch: a fixed three-table match/action pipeline.
///
/// Within a table the highest-priority matching entry wins; among equal
/// priorities the earliest installed one does. A frame that matches nothing
/// in a table is dropped.
class Switch {
 public:
  explicit Switch(net::Dpid dpid) : dpid_(dpid) {}

  net::Dpid dpid() const { return dpid_; }

  void add_port(PortId port) { ports_.insert(port); }
  bool has_port(PortId port) const { return ports_.contains(port); }
  const std::set<PortId>& ports() const { return ports_; }

  /// Installs or replaces the entry keyed by (table, priority, match).
  /// Throws BadGotoTable, UnknownPort or InvalidArgument.
  RuleHandle install_flow(FlowEntry entry);

  /// Removes every entry carrying the cookie; returns how many.
  std::size_t delete_flows(std::uint64_t cookie);

  std::vector<Emission> process(net::EthernetFrame frame, PortId in_port);

  /// Looks up the entry that would win in one table, without side effects.
  const FlowEntry* peek(std::uint8_t table, const net::EthernetFrame& frame,
                        PortId in_port) const;

  std::vector<FlowEntry> entries() const;
  std::size_t rule_count() const;
  const SwitchCounters& counters() const { return counters_; }

  /// Throws unless the entry is installable on this switch.
  void validate(const FlowEntry& entry) const;

 private:
  struct Slot {
    FlowEntry entry;
    std::uint64_t seq;
  };

  net::Dpid dpid_;
  std::set<PortId> ports_;
  // Each table is kept sorted by (priority desc, seq asc).
  std::array<std::vector<Slot>, kTableCount> tables_;
  std::uint64_t next_seq_ = 1;
  SwitchCounters counters_;
};

}  // namespace oshi::flow
