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
#include <span>
#include <string_view>
#include <vector>

#include "oshi/measure/cost_model.hpp"
#include "oshi/net/frame.hpp"
#include "oshi/net/port.hpp"

namespace oshi::overlay {

inline constexpr std::uint16_t kVxlanPort = 4789;
inline constexpr std::uint8_t kVxlanFlagVni = 0x08;
inline constexpr std::size_t kVxlanHeaderLen = 8;
inline constexpr std::size_t kUdpHeaderLen = 8;
/// Outer Ethernet + IPv4 + UDP + VXLAN.
inline constexpr std::size_t kTunnelOverhead = 50;
inline constexpr std::size_t kUnderlayMtu = 9000;
inline constexpr std::size_t kMaxInnerFrame = kUnderlayMtu - kTunnelOverhead;
inline constexpr std::uint32_t kMaxVni = (1u << 24) - 1;

enum class TunnelKind { VxlanKernel, UserspaceVpn };

std::string_view to_string(TunnelKind k);

/// Point-to-point tunnel: the VNI names exactly one deployed link.
struct TunnelPort {
  net::Ipv4Addr local;
  net::Ipv4Addr remote;
  std::uint32_t vni = 0;
  TunnelKind kind = TunnelKind::VxlanKernel;
  net::PortId port;
};

struct VxlanDatagram {
  net::Ipv4Addr outer_src;
  net::Ipv4Addr outer_dst;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = kVxlanPort;
  std::uint8_t flags = kVxlanFlagVni;
  std::uint32_t vni = 0;
  std::vector<std::uint8_t> inner;

  friend bool operator==(const VxlanDatagram&, const VxlanDatagram&) = default;
};

/// Outer IPv4/UDP header followed by the VXLAN header and the inner frame.
std::vector<std::uint8_t> encode_datagram(const VxlanDatagram& d);
/// Throws Malformed on truncated or inconsistent headers.
VxlanDatagram decode_datagram(std::span<const std::uint8_t> bytes);

struct TunnelCounters {
  std::uint64_t encapsulated = 0;
  std::uint64_t decapsulated = 0;
  std::uint64_t vni_mismatch = 0;
  std::uint64_t malformed = 0;
};

class Tunnel {
 public:
  explicit Tunnel(TunnelPort config);

  const TunnelPort& config() const { return config_; }
  const TunnelCounters& counters() const { return counters_; }

  /// Throws Oversize for frames longer than kMaxInnerFrame on the wire.
  /// Charges half of the tunnel cost to `meter` when given.
  VxlanDatagram encap(const net::EthernetFrame& frame, measure::CpuMeter* meter = nullptr,
                      measure::TrafficClass cls = measure::TrafficClass::Data);

  /// Throws VniMismatch (counted) or Malformed.
  net::EthernetFrame decap(const VxlanDatagram& datagram, measure::CpuMeter* meter = nullptr,
                           measure::TrafficClass cls = measure::TrafficClass::Data);
  net::EthernetFrame decap(std::span<const std::uint8_t> bytes,
                           measure::CpuMeter* meter = nullptr,
                           measure::TrafficClass cls = measure::TrafficClass::Data);

 private:
  measure::CostItem cost_item() const {
    return config_.kind == TunnelKind::VxlanKernel ? measure::CostItem::VxHalf
                                                   : measure::CostItem::VpnHalf;
  }

  TunnelPort config_;
  TunnelCounters counters_;
};

}  // namespace oshi::overlay
