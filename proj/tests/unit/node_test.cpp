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

#include "oshi/ctrl/messages.hpp"
#include "oshi/net/ipv4.hpp"
#include "oshi/node/oshi_node.hpp"
#include "oshi/topo/deployment.hpp"
#include "support/doc_builder.hpp"
#include "support/errors.hpp"

namespace oshi::node {
namespace {

using Kind = IngressDecision::Kind;
using net::PortId;
using oshi::testing::error_code;

net::EthernetFrame ip_frame(std::optional<std::uint16_t> vid = std::nullopt) {
  net::EthernetFrame f;
  f.dst = net::MacAddr::local(1);
  f.src = net::MacAddr::local(2);
  if (vid) f.tag = net::VlanTag{*vid, 0};
  f.ethertype = net::kEthertypeIpv4;
  f.payload = net::encode_ipv4(net::Ipv4Packet{net::Ipv4Addr(1, 1, 1, 1),
                                               net::Ipv4Addr(2, 2, 2, 2), 64, net::kProtoUdp,
                                               {0, 0, 0, 0, 0, 0, 0, 0}});
  return f;
}

PortConfig port(std::uint32_t id, PortFacing facing,
                std::optional<std::uint16_t> customer_vid = std::nullopt) {
  PortConfig p;
  p.id = PortId(id);
  p.facing = facing;
  p.address = net::Ipv4Addr(10, 0, 0, static_cast<std::uint8_t>(4 * id + 1));
  p.subnet = net::Ipv4Prefix(p.address, 30);
  p.customer_ip_vid = customer_vid;
  return p;
}

NodeConfig pe_config(CoexistenceMode mode) {
  NodeConfig c;
  c.id = "PE1";
  c.role = NodeRole::AccessOshi;
  c.dpid = net::Dpid(1);
  c.loopback = net::Ipv4Addr(172, 16, 0, 1);
  c.coexistence = mode;
  c.ports = {port(1, PortFacing::Core), port(2, PortFacing::Customer),
             port(3, PortFacing::Customer, 10)};
  return c;
}

// Installs the bootstrap rules on a bare switch so the pipeline can be
// exercised without a node around it.
flow::Switch bootstrapped(const NodeConfig& c) {
  flow::Switch sw(c.dpid);
  for (const auto& p : c.ports) {
    sw.add_port(p.id);
    sw.add_port(net::virtual_port_of(p.id));
  }
  for (auto& e : bootstrap_rules(c)) sw.install_flow(std::move(e));
  return sw;
}

std::optional<PortId> single_out(flow::Switch& sw, const net::EthernetFrame& f, PortId in,
                                 net::EthernetFrame* emitted = nullptr) {
  const auto out = sw.process(f, in);
  if (out.size() != 1 || out[0].to_controller()) return std::nullopt;
  if (emitted != nullptr) *emitted = out[0].frame;
  return out[0].port;
}

TEST(Bootstrap, UntaggedCoexistence) {
  auto sw = bootstrapped(pe_config(CoexistenceMode::untagged()));
  const PortId v1 = net::virtual_port_of(PortId(1));
  EXPECT_EQ(single_out(sw, ip_frame(), PortId(1)), v1);
  EXPECT_EQ(single_out(sw, ip_frame(), v1), PortId(1));
  // Tagged frames on a core port fall through to the (empty) SBP table.
  EXPECT_EQ(single_out(sw, ip_frame(7), PortId(1)), std::nullopt);
  // Probes go to the controller.
  auto probe = ctrl::make_probe_frame(ctrl::Probe{net::Dpid(9), PortId(4)});
  const auto out = sw.process(probe, PortId(1));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].to_controller());
}

TEST(Bootstrap, TaggedCoexistenceAddsAndStripsIpVid) {
  auto sw = bootstrapped(pe_config(CoexistenceMode::tagged(4)));
  const PortId v1 = net::virtual_port_of(PortId(1));
  net::EthernetFrame got;
  EXPECT_EQ(single_out(sw, ip_frame(4), PortId(1), &got), v1);
  EXPECT_EQ(got, ip_frame());
  EXPECT_EQ(single_out(sw, ip_frame(), v1, &got), PortId(1));
  EXPECT_EQ(got, ip_frame(4));
  // Untagged IP on a core link is not IP in tagged mode.
  EXPECT_EQ(single_out(sw, ip_frame(), PortId(1)), std::nullopt);
}

TEST(Bootstrap, CustomerPortDefaults) {
  auto sw = bootstrapped(pe_config(CoexistenceMode::untagged()));
  const PortId v2 = net::virtual_port_of(PortId(2));
  const PortId v3 = net::virtual_port_of(PortId(3));
  net::EthernetFrame got;
  EXPECT_EQ(single_out(sw, ip_frame(), PortId(2)), v2);
  EXPECT_EQ(single_out(sw, ip_frame(5), PortId(2)), std::nullopt);
  EXPECT_EQ(single_out(sw, ip_frame(10), PortId(3), &got), v3);
  EXPECT_FALSE(got.tagged());
  EXPECT_EQ(single_out(sw, ip_frame(), PortId(3)), std::nullopt);
  EXPECT_EQ(single_out(sw, ip_frame(), v3, &got), PortId(3));
  EXPECT_EQ(got.tag->vid, 10);
}

TEST(Bootstrap, ReservedIpVidIsRejected) {
  auto c = pe_config(CoexistenceMode::tagged(4));
  c.reserved_vids = {4};
  EXPECT_EQ(error_code([&] { bootstrap_rules(c); }), Errc::ReservedVid);
  c = pe_config(CoexistenceMode::untagged());
  c.reserved_vids = {10};
  EXPECT_EQ(error_code([&] { bootstrap_rules(c); }), Errc::ReservedVid);
  c.reserved_vids = {};
  c.ports[2].customer_ip_vid = 4095;
  EXPECT_EQ(error_code([&] { bootstrap_rules(c); }), Errc::ReservedVid);
}

TEST(OshiNode, ConstructorChecks) {
  auto c = pe_config(CoexistenceMode::untagged());
  c.role = NodeRole::PlainRouter;
  EXPECT_EQ(error_code([&] { OshiNode n(c); }), Errc::InvalidArgument);
  c = pe_config(CoexistenceMode::untagged());
  c.ports.push_back(port(net::kVirtualPortBase + 1, PortFacing::Core));
  EXPECT_EQ(error_code([&] { OshiNode n(c); }), Errc::PortPairing);
  c = pe_config(CoexistenceMode::untagged());
  OshiNode n(c);
  EXPECT_EQ(n.rule_count(), bootstrap_rules(c).size());
  EXPECT_EQ(n.scs().ports().size(), 6u);
}

// CE1 attaches with IP tagged vid 10, CE3 untagged; PE2 carries CE2.
class Ingress : public ::testing::Test {
 protected:
  void SetUp() override {
    b_.pe("PE1").pe("PE2").cr("CR1").ce("CE1").ce("CE2").ce("CE3");
    b_.link("CE1", "PE1");
    b_.doc().links.back().ip_vid = 10;
    b_.link("CE3", "PE1").link("PE1", "CR1").link("CR1", "PE2").link("PE2", "CE2");
    topo::DeployOptions o;
    o.log_events = false;
    d_ = topo::Deployment::deploy(b_.doc(), o);
  }
  IngressDecision classify(std::optional<std::uint16_t> vid, const std::string& ce) {
    return d_->oshi("PE1")->classify_ingress(ip_frame(vid), b_.port("PE1", ce));
  }
  oshi::testing::DocBuilder b_;
  std::unique_ptr<topo::Deployment> d_;
};

TEST_F(Ingress, AllFourMappings) {
  // UntaggedToIp and TaggedToIp are the defaults of the two customer ports.
  EXPECT_EQ(classify({}, "CE3").kind, Kind::ToIpEngine);
  EXPECT_EQ(classify(10, "CE1").kind, Kind::ToIpEngine);
  EXPECT_EQ(classify({}, "CE1").kind, Kind::Drop);
  EXPECT_EQ(classify(11, "CE3").kind, Kind::Drop);
  const auto r = d_->reachability({"CE1", "CE2", "CE3"});
  EXPECT_EQ(r.reached, r.pairs);

  // TaggedToVll on the tagged port, next to its IP vid.
  d_->push_vll(ctrl::VllRequest{"t", {"PE1", b_.port("PE1", "CE1"), 200},
                                {"PE2", b_.port("PE2", "CE2"), 200}});
  auto dec = classify(200, "CE1");
  EXPECT_EQ(dec.kind, Kind::ToSbp);
  EXPECT_EQ(dec.vll, "t");
  EXPECT_EQ(classify(10, "CE1").kind, Kind::ToIpEngine);

  // UntaggedToVll on the untagged port overrides the IP default there.
  d_->push_vll(ctrl::VllRequest{"u", {"PE1", b_.port("PE1", "CE3"), {}},
                                {"PE2", b_.port("PE2", "CE2"), 300}});
  dec = classify({}, "CE3");
  EXPECT_EQ(dec.kind, Kind::ToSbp);
  EXPECT_EQ(dec.vll, "u");

  const auto policy = d_->oshi("PE1")->ingress_policy();
  ASSERT_EQ(policy.size(), 2u);

  d_->delete_vll("u");
  EXPECT_EQ(classify({}, "CE3").kind, Kind::ToIpEngine);
  d_->delete_vll("t");
  EXPECT_EQ(classify(200, "CE1").kind, Kind::Drop);
}

TEST_F(Ingress, WrongVidIsDroppedAtTheSwitch) {
  auto& pe = *d_->oshi("PE1");
  const auto dropped = pe.scs().counters().packets_dropped;
  const auto forwarded = pe.ip_counters().forwarded;
  d_->inject("CE1", b_.port("CE1", "PE1"), ip_frame(11));
  d_->sim().run_for(std::chrono::milliseconds(50));
  EXPECT_EQ(pe.scs().counters().packets_dropped, dropped + 1);
  EXPECT_EQ(pe.ip_counters().forwarded, forwarded);
}

}  // namespace
}  // namespace oshi::node
