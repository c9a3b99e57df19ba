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

#include "oshi/net/ipv4.hpp"

#include <string>

#include "oshi/common/error.hpp"
#include "oshi/net/frame.hpp"

namespace oshi::net {

namespace {

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get32(std::span<const std::uint8_t> b, std::size_t off) {
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) |
         (std::uint32_t{b[off + 2]} << 8) | std::uint32_t{b[off + 3]};
}

}  // namespace

std::vector<std::uint8_t> encode_ipv4(const Ipv4Packet& packet) {
  const std::size_t total = kIpv4HeaderLen + packet.payload.size();
  if (total > kMaxPayload) {
    throw Error(Errc::Oversize, "IPv4 packet of " + std::to_string(total) + " bytes");
  }
  std::vector<std::uint8_t> out;
  out.reserve(total);
  out.push_back(0x45);
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(total >> 8));
  out.push_back(static_cast<std::uint8_t>(total & 0xff));
  out.insert(out.end(), {0, 0, 0, 0});  // id, flags, fragment offset
  out.push_back(packet.ttl);
  out.push_back(packet.protocol);
  out.insert(out.end(), {0, 0});  // checksum
  put32(out, packet.src.value());
  put32(out, packet.dst.value());
  out.insert(out.end(), packet.payload.begin(), packet.payload.end());
  return out;
}

Ipv4Packet decode_ipv4(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kIpv4HeaderLen) {
    throw Error(Errc::Truncated, "IPv4 header truncated");
  }
  if (bytes[0] != 0x45) {
    throw Error(Errc::Malformed, "unsupported IPv4 version/IHL");
  }
  const std::size_t total = (std::size_t{bytes[2]} << 8) | bytes[3];
  if (total < kIpv4HeaderLen || total > bytes.size()) {
    throw Error(Errc::Malformed, "IPv4 total length mismatch");
  }
  Ipv4Packet p;
  p.ttl = bytes[8];
  p.protocol = bytes[9];
  p.src = Ipv4Addr(get32(bytes, 12));
  p.dst = Ipv4Addr(get32(bytes, 16));
  p.payload.assign(bytes.begin() + kIpv4HeaderLen,
                   bytes.begin() + static_cast<std::ptrdiff_t>(total));
  return p;
}

std::optional<std::uint8_t> peek_ipv4_protocol(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kIpv4HeaderLen || bytes[0] != 0x45) return std::nullopt;
  return bytes[9];
}

}  // namespace oshi::net
