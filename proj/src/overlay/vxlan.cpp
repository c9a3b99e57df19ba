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

#include "oshi/overlay/vxlan.hpp"

#include <string>

#include "oshi/common/error.hpp"
#include "oshi/net/ipv4.hpp"

namespace oshi::overlay {

std::string_view to_string(TunnelKind k) {
  return k == TunnelKind::VxlanKernel ? "vxlan" : "vpn";
}

std::vector<std::uint8_t> encode_datagram(const VxlanDatagram& d) {
  if (d.vni > kMaxVni) throw Error(Errc::InvalidArgument, "vni out of range");
  const std::size_t udp_len = kUdpHeaderLen + kVxlanHeaderLen + d.inner.size();
  std::vector<std::uint8_t> udp;
  udp.reserve(udp_len);
  udp.push_back(static_cast<std::uint8_t>(d.src_port >> 8));
  udp.push_back(static_cast<std::uint8_t>(d.src_port));
  udp.push_back(static_cast<std::uint8_t>(d.dst_port >> 8));
  udp.push_back(static_cast<std::uint8_t>(d.dst_port));
  udp.push_back(static_cast<std::uint8_t>(udp_len >> 8));
  udp.push_back(static_cast<std::uint8_t>(udp_len));
  udp.push_back(0);  // checksum unused
  udp.push_back(0);
  udp.push_back(d.flags);
  udp.insert(udp.end(), {0, 0, 0});
  udp.push_back(static_cast<std::uint8_t>(d.vni >> 16));
  udp.push_back(static_cast<std::uint8_t>(d.vni >> 8));
  udp.push_back(static_cast<std::uint8_t>(d.vni));
  udp.push_back(0);
  udp.insert(udp.end(), d.inner.begin(), d.inner.end());
  return net::encode_ipv4(net::Ipv4Packet{d.outer_src, d.outer_dst, 64, net::kProtoUdp,
                                          std::move(udp)});
}

VxlanDatagram decode_datagram(std::span<const std::uint8_t> bytes) {
  net::Ipv4Packet ip;
  try {
    ip = net::decode_ipv4(bytes);
  } catch (const Error& e) {
    throw Error(Errc::Malformed, std::string("outer header: ") + e.what());
  }
  if (ip.protocol != net::kProtoUdp) throw Error(Errc::Malformed, "outer packet is not UDP");
  const auto& u = ip.payload;
  if (u.size() < kUdpHeaderLen + kVxlanHeaderLen) {
    throw Error(Errc::Malformed, "truncated VXLAN header");
  }
  VxlanDatagram d;
  d.outer_src = ip.src;
  d.outer_dst = ip.dst;
  d.src_port = static_cast<std::uint16_t>((u[0] << 8) | u[1]);
  d.dst_port = static_cast<std::uint16_t>((u[2] << 8) | u[3]);
  const std::size_t udp_len = (std::size_t{u[4]} << 8) | u[5];
  if (udp_len != u.size()) throw Error(Errc::Malformed, "UDP length mismatch");
  if (d.dst_port != kVxlanPort) throw Error(Errc::Malformed, "not the VXLAN port");
  d.flags = u[8];
  if ((d.flags & kVxlanFlagVni) == 0) throw Error(Errc::Malformed, "VNI flag not set");
  d.vni = (std::uint32_t{u[12]} << 16) | (std::uint32_t{u[13]} << 8) | u[14];
  d.inner.assign(u.begin() + kUdpHeaderLen + kVxlanHeaderLen, u.end());
  return d;
}

Tunnel::Tunnel(TunnelPort config) : config_(config) {
  if (config_.vni > kMaxVni) throw Error(Errc::InvalidArgument, "vni out of range");
}

VxlanDatagram Tunnel::encap(const net::EthernetFrame& frame, measure::CpuMeter* meter,
                            measure::TrafficClass cls) {
  if (frame.wire_size() > kMaxInnerFrame) {
    throw Error(Errc::Oversize, "frame of " + std::to_string(frame.wire_size()) +
                                    " bytes exceeds tunnel limit " +
                                    std::to_string(kMaxInnerFrame));
  }
  VxlanDatagram d;
  d.outer_src = config_.local;
  d.outer_dst = config_.remote;
  d.src_port = static_cast<std::uint16_t>(49152 + config_.vni % 16384);
  d.vni = config_.vni;
  net::encode_frame_into(frame, d.inner);
  ++counters_.encapsulated;
  if (meter != nullptr) meter->charge(cost_item(), cls);
  return d;
}

net::EthernetFrame Tunnel::decap(const VxlanDatagram& datagram, measure::CpuMeter* meter,
                                 measure::TrafficClass cls) {
  if (datagram.vni != config_.vni) {
    ++counters_.vni_mismatch;
    throw Error(Errc::VniMismatch, "vni " + std::to_string(datagram.vni) + " on tunnel " +
                                       std::to_string(config_.vni));
  }
  net::EthernetFrame f;
  try {
    f = net::decode_frame(datagram.inner);
  } catch (const Error& e) {
    ++counters_.malformed;
    throw Error(Errc::Malformed, std::string("inner frame: ") + e.what());
  }
  ++counters_.decapsulated;
  if (meter != nullptr) meter->charge(cost_item(), cls);
  return f;
}

net::EthernetFrame Tunnel::decap(std::span<const std::uint8_t> bytes, measure::CpuMeter* meter,
                                 measure::TrafficClass cls) {
  VxlanDatagram d;
  try {
    d = decode_datagram(bytes);
  } catch (const Error&) {
    ++counters_.malformed;
    throw;
  }
  return decap(d, meter, cls);
}

}  // namespace oshi::overlay
