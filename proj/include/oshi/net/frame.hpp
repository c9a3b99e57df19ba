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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oshi/net/addr.hpp"

namespace oshi::net {

inline constexpr std::uint16_t kEthertypeIpv4 = 0x0800;
inline constexpr std::uint16_t kEthertypeVlan = 0x8100;
/// Topology discovery probes (local experimental ethertype).
inline constexpr std::uint16_t kEthertypeProbe = 0x88b5;

inline constexpr std::size_t kEthernetHeaderLen = 14;
inline constexpr std::size_t kVlanTagLen = 4;
inline constexpr std::size_t kMaxPayload = 9000;

inline constexpr std::uint16_t kMaxVid = 4095;

/// 0 and 4095 are never handed out to services.
constexpr bool is_reserved_vid(std::uint16_t vid) { return vid == 0 || vid == kMaxVid; }

struct VlanTag {
  std::uint16_t vid = 0;
  std::uint8_t pcp = 0;

  /// Throws InvalidArgument for vid > 4095 or pcp > 7.
  static VlanTag make(unsigned vid, unsigned pcp = 0);

  friend bool operator==(const VlanTag&, const VlanTag&) = default;
};

struct EthernetFrame {
  MacAddr dst;
  MacAddr src;
  std::optional<VlanTag> tag;
  std::uint16_t ethertype = 0;
  std::vector<std::uint8_t> payload;

  bool tagged() const { return tag.has_value(); }
  std::size_t wire_size() const {
    return kEthernetHeaderLen + (tag ? kVlanTagLen : 0) + payload.size();
  }

  friend bool operator==(const EthernetFrame&, const EthernetFrame&) = default;
};

/// 802.3 / 802.1Q wire layout. Throws Oversize for payloads above kMaxPayload.
std::vector<std::uint8_t> encode_frame(const EthernetFrame& frame);
void encode_frame_into(const EthernetFrame& frame, std::vector<std::uint8_t>& out);

/// Inverse of encode_frame. Throws Truncated for short input.
EthernetFrame decode_frame(std::span<const std::uint8_t> bytes);

EthernetFrame vlan_push(EthernetFrame frame, VlanTag tag);
EthernetFrame vlan_pop(EthernetFrame frame);
EthernetFrame vlan_set(EthernetFrame frame, std::uint16_t vid);

}  // namespace oshi::net
