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

#include <gtest/gtest.h>

#include <random>

#include "oshi/overlay/vxlan.hpp"
#include "support/errors.hpp"

namespace oshi::overlay {
namespace {

using testing::error_code;

net::EthernetFrame random_frame(std::mt19937_64& rng, std::size_t max_payload) {
  net::EthernetFrame f;
  f.dst = net::MacAddr::local(rng() & 0xffffffffff);
  f.src = net::MacAddr::local(rng() & 0xffffffffff);
  if (rng() % 2) f.tag = net::VlanTag{static_cast<std::uint16_t>(1 + rng() % 4094), 0};
  f.ethertype = rng() % 2 ? net::kEthertypeIpv4 : net::kEthertypeProbe;
  f.payload.resize(rng() % (max_payload + 1));
  for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng());
  return f;
}

TunnelPort port(std::uint32_t vni, TunnelKind kind = TunnelKind::VxlanKernel) {
  return TunnelPort{net::Ipv4Addr(10, 0, 0, 1), net::Ipv4Addr(10, 0, 0, 2), vni, kind,
                    net::PortId(1)};
}

TEST(Vxlan, HeaderLayout) {
  VxlanDatagram d;
  d.outer_src = net::Ipv4Addr(10, 0, 0, 1);
  d.outer_dst = net::Ipv4Addr(10, 0, 0, 2);
  d.src_port = 0xc001;
  d.vni = 0x123456;
  d.inner = {0xde, 0xad};
  const auto b = encode_datagram(d);
  // 20 IPv4 + 8 UDP + 8 VXLAN + 2 inner.
  ASSERT_EQ(b.size(), 38u);
  EXPECT_EQ(b[9], 17);                                    // UDP
  EXPECT_EQ((b[22] << 8) | b[23], 4789);                  // dst port
  EXPECT_EQ((b[24] << 8) | b[25], 18);                    // UDP length
  EXPECT_EQ(b[28], 0x08);                                 // I flag
  EXPECT_EQ((b[32] << 16) | (b[33] << 8) | b[34], 0x123456);
  EXPECT_EQ(b[35], 0);
  EXPECT_EQ(decode_datagram(b), d);
}

TEST(Vxlan, EncapDecapIsBitExact) {
  std::mt19937_64 rng(11);
  Tunnel a(port(7));
  Tunnel b(port(7));
  for (int i = 0; i < 1000; ++i) {
    const auto f = random_frame(rng, 1500);
    const auto wire = encode_datagram(a.encap(f));
    const auto back = b.decap(wire);
    ASSERT_EQ(back, f);
    ASSERT_EQ(net::encode_frame(back), net::encode_frame(f));
  }
  EXPECT_EQ(a.counters().encapsulated, 1000u);
  EXPECT_EQ(b.counters().decapsulated, 1000u);
}

TEST(Vxlan, MaxInnerFrameFitsUnderlay) {
  net::EthernetFrame f;
  f.payload.resize(kMaxInnerFrame - net::kEthernetHeaderLen);
  Tunnel t(port(1));
  const auto wire = encode_datagram(t.encap(f));
  EXPECT_EQ(wire.size() + net::kEthernetHeaderLen, kUnderlayMtu);
  f.payload.push_back(0);
  EXPECT_EQ(error_code([&] { t.encap(f); }), Errc::Oversize);
}

TEST(Vxlan, VniMismatchIsCountedAndRejected) {
  std::mt19937_64 rng(3);
  Tunnel a(port(5));
  Tunnel b(port(6));
  const auto d = a.encap(random_frame(rng, 64));
  EXPECT_EQ(error_code([&] { b.decap(d); }), Errc::VniMismatch);
  EXPECT_EQ(b.counters().vni_mismatch, 1u);
  EXPECT_EQ(b.counters().decapsulated, 0u);
}

TEST(Vxlan, MalformedInput) {
  Tunnel t(port(1));
  std::vector<std::uint8_t> junk(30, 0);
  EXPECT_EQ(error_code([&] { t.decap(junk); }), Errc::Malformed);
  VxlanDatagram d;
  d.vni = 1;
  d.inner = {1, 2, 3};  // shorter than an Ethernet header
  EXPECT_EQ(error_code([&] { t.decap(d); }), Errc::Malformed);
  EXPECT_EQ(t.counters().malformed, 2u);
  auto b = encode_datagram(VxlanDatagram{});
  b[28] = 0;  // clear the I flag
  EXPECT_EQ(error_code([&] { decode_datagram(b); }), Errc::Malformed);
  EXPECT_EQ(error_code([] { Tunnel(port(kMaxVni + 1)); }), Errc::InvalidArgument);
}

TEST(Vxlan, ChargesHalfCostPerSide) {
  std::mt19937_64 rng(1);
  measure::CpuMeter m;
  Tunnel vx(port(1));
  Tunnel vpn(port(2, TunnelKind::UserspaceVpn));
  const auto f = random_frame(rng, 100);
  vx.decap(vx.encap(f, &m), &m);
  vpn.encap(f, &m, measure::TrafficClass::Control);
  EXPECT_EQ(m.count(measure::CostItem::VxHalf, measure::TrafficClass::Data), 2u);
  EXPECT_EQ(m.count(measure::CostItem::VpnHalf, measure::TrafficClass::Control), 1u);
  const auto& model = measure::kDefaultCostModel;
  EXPECT_DOUBLE_EQ(m.units(model, measure::TrafficClass::Data), model.vx);
  EXPECT_DOUBLE_EQ(m.units(model, measure::TrafficClass::Control), model.vpn / 2);
}

}  // namespace
}  // namespace oshi::overlay
