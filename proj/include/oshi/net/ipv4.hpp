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
#include <span>
#include <vector>

#include "oshi/net/addr.hpp"

namespace oshi::net {

inline constexpr std::uint8_t kProtoIcmp = 1;
inline constexpr std::uint8_t kProtoUdp = 17;
inline constexpr std::uint8_t kProtoLinkState = 89;
/// Management entity <-> controller datagrams.
inline constexpr std::uint8_t kProtoControl = 253;

inline constexpr std::size_t kIpv4HeaderLen = 20;
inline constexpr Ipv4Addr kAllRouters{224, 0, 0, 5};

struct Ipv4Packet {
  Ipv4Addr src;
  Ipv4Addr dst;
  std::uint8_t ttl = 64;
  std::uint8_t protocol = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Ipv4Packet&, const Ipv4Packet&) = default;
};

/// 20-byte header without options; the checksum field is left zero.
std::vector<std::uint8_t> encode_ipv4(const Ipv4Packet& packet);
Ipv4Packet decode_ipv4(std::span<const std::uint8_t> bytes);

/// Protocol number of an encoded packet, if the bytes look like IPv4.
std::optional<std::uint8_t> peek_ipv4_protocol(std::span<const std::uint8_t> bytes);

}  // namespace oshi::net
