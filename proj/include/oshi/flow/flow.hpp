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
#include <variant>
#include <vector>

#include "oshi/net/frame.hpp"
#include "oshi/net/port.hpp"

namespace oshi::flow {

using net::PortId;

/// Table layout of the SCS pipeline.
inline constexpr std::uint8_t kTableClassify = 0;
inline constexpr std::uint8_t kTableSbp = 1;
inline constexpr std::uint8_t kTableIpBypass = 2;
inline constexpr std::uint8_t kTableCount = 3;

/// VLAN part of a match: either "untagged" or an exact vid.
struct VlanMatch {
  std::optional<std::uint16_t> vid;  // nullopt = frame must be untagged

  static VlanMatch untagged() { return {}; }
  static VlanMatch exact(std::uint16_t vid) { return VlanMatch{vid}; }

  friend bool operator==(const VlanMatch&, const VlanMatch&) = default;
};

/// All-absent fields form the table-miss wildcard.
struct FlowMatch {
  std::optional<PortId> in_port;
  std::optional<VlanMatch> vlan;
  std::optional<std::uint16_t> ethertype;
  std::optional<net::MacAddr> eth_dst;

  bool is_wildcard() const { return !in_port && !vlan && !ethertype && !eth_dst; }
  bool matches(const net::EthernetFrame& frame, PortId port) const;

  friend bool operator==(const FlowMatch&, const FlowMatch&) = default;
};

namespace action {
struct Output {
  PortId port;
  friend bool operator==(const Output&, const Output&) = default;
};
struct OutputController {
  friend bool operator==(const OutputController&, const OutputController&) = default;
};
struct PushVlan {
  std::uint16_t vid;
  friend bool operator==(const PushVlan&, const PushVlan&) = default;
};
struct PopVlan {
  friend bool operator==(const PopVlan&, const PopVlan&) = default;
};
struct SetVlan {
  std::uint16_t vid;
  friend bool operator==(const SetVlan&, const SetVlan&) = default;
};
struct GotoTable {
  std::uint8_t table;
  friend bool operator==(const GotoTable&, const GotoTable&) = default;
};
struct Drop {
  friend bool operator==(const Drop&, const Drop&) = default;
};
}  // namespace action

using FlowAction = std::variant<action::Output, action::OutputController, action::PushVlan,
                                action::PopVlan, action::SetVlan, action::GotoTable,
                                action::Drop>;

struct FlowCounters {
  std::uint64_t packets = 0;
  std::uint64_t bytes = 0;
  friend bool operator==(const FlowCounters&, const FlowCounters&) = default;
};

struct FlowEntry {
  std::uint8_t table_id = 0;
  std::uint16_t priority = 0;
  FlowMatch match;
  std::vector<FlowAction> actions;
  std::uint64_t cookie = 0;
  FlowCounters counters;

  friend bool operator==(const FlowEntry&, const FlowEntry&) = default;
};

/// Identifies an installed rule: stable for the life of the entry.
struct RuleHandle {
  std::uint8_t table_id = 0;
  std::uint64_t id = 0;
  friend bool operator==(const RuleHandle&, const RuleHandle&) = default;
};

/// One frame leaving the pipeline, either on a port or towards the controller.
struct Emission {
  std::optional<PortId> port;  // nullopt: to controller
  net::EthernetFrame frame;

  bool to_controller() const { return !port.has_value(); }
  friend bool operator==(const Emission&, const Emission&) = default;
};

struct SwitchCounters {
  std::uint64_t packets_in = 0;
  std::uint64_t packets_emitted = 0;
  std::uint64_t packets_dropped = 0;
  std::uint64_t packets_to_controller = 0;

  friend bool operator==(const SwitchCounters&, const SwitchCounters&) = default;
};

}  // namespace oshi::flow
