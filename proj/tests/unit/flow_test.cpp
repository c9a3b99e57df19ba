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

#include "oshi/flow/flow_json.hpp"
#include "oshi/flow/switch.hpp"
#include "support/errors.hpp"

namespace oshi::flow {
namespace {

using testing::error_code;

Switch make_switch(int ports = 4) {
  Switch sw(net::Dpid(1));
  for (int p = 1; p <= ports; ++p) sw.add_port(PortId(static_cast<std::uint32_t>(p)));
  return sw;
}

net::EthernetFrame frame(std::optional<std::uint16_t> vid = std::nullopt,
                         std::uint16_t ethertype = net::kEthertypeIpv4) {
  net::EthernetFrame f;
  f.dst = net::MacAddr::local(1);
  f.src = net::MacAddr::local(2);
  if (vid) f.tag = net::VlanTag{*vid, 0};
  f.ethertype = ethertype;
  f.payload = {1, 2, 3, 4};
  return f;
}

FlowEntry rule(std::uint8_t table, std::uint16_t prio, FlowMatch m, std::vector<FlowAction> a,
               std::uint64_t cookie = 0) {
  return FlowEntry{table, prio, std::move(m), std::move(a), cookie, {}};
}

TEST(Switch, VlanSwitchingRule) {
  auto sw = make_switch();
  sw.install_flow(rule(1, 10, FlowMatch{PortId(1), VlanMatch::exact(55), {}, {}},
                       {action::SetVlan{71}, action::Output{PortId(2)}}));
  sw.install_flow(rule(0, 0, {}, {action::GotoTable{1}}));
  const auto out = sw.process(frame(55), PortId(1));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].port, PortId(2));
  EXPECT_EQ(out[0].frame.tag->vid, 71);
  EXPECT_EQ(out[0].frame.payload, frame().payload);
  EXPECT_TRUE(sw.process(frame(56), PortId(1)).empty());
  EXPECT_EQ(sw.counters().packets_emitted, 1u);
  EXPECT_EQ(sw.counters().packets_dropped, 1u);
}

TEST(Switch, PriorityThenInstallOrder) {
  auto sw = make_switch();
  sw.install_flow(rule(0, 5, FlowMatch{{}, {}, net::kEthertypeIpv4, {}},
                       {action::Output{PortId(2)}}));
  sw.install_flow(rule(0, 5, FlowMatch{PortId(1), {}, {}, {}}, {action::Output{PortId(3)}}));
  sw.install_flow(rule(0, 1, {}, {action::Output{PortId(4)}}));
  // Both priority-5 rules match; the first installed wins.
  EXPECT_EQ(sw.process(frame(), PortId(1))[0].port, PortId(2));
  EXPECT_EQ(sw.process(frame({}, 0x88b5), PortId(1))[0].port, PortId(3));
  EXPECT_EQ(sw.process(frame({}, 0x88b5), PortId(2))[0].port, PortId(4));
}

TEST(Switch, ReinstallReplacesActions) {
  auto sw = make_switch();
  const auto h1 = sw.install_flow(rule(0, 5, {}, {action::Output{PortId(2)}}, 1));
  const auto h2 = sw.install_flow(rule(0, 5, {}, {action::Output{PortId(3)}}, 2));
  EXPECT_EQ(h1, h2);
  EXPECT_EQ(sw.rule_count(), 1u);
  EXPECT_EQ(sw.process(frame(), PortId(1))[0].port, PortId(3));
  EXPECT_EQ(sw.delete_flows(1), 0u);
  EXPECT_EQ(sw.delete_flows(2), 1u);
  EXPECT_EQ(sw.rule_count(), 0u);
}

TEST(Switch, Validation) {
  auto sw = make_switch(2);
  EXPECT_EQ(error_code([&] { sw.install_flow(rule(1, 0, {}, {action::GotoTable{1}})); }),
            Errc::BadGotoTable);
  EXPECT_EQ(error_code([&] { sw.install_flow(rule(2, 0, {}, {action::GotoTable{1}})); }),
            Errc::BadGotoTable);
  EXPECT_EQ(error_code([&] {
              sw.install_flow(rule(0, 0, {}, {action::GotoTable{1}, action::Drop{}}));
            }),
            Errc::BadGotoTable);
  EXPECT_EQ(error_code([&] { sw.install_flow(rule(0, 0, {}, {action::Output{PortId(9)}})); }),
            Errc::UnknownPort);
  EXPECT_EQ(error_code([&] {
              sw.install_flow(rule(0, 0, FlowMatch{PortId(9), {}, {}, {}}, {action::Drop{}}));
            }),
            Errc::UnknownPort);
  EXPECT_EQ(error_code([&] { sw.install_flow(rule(3, 0, {}, {action::Drop{}})); }),
            Errc::InvalidArgument);
  EXPECT_EQ(error_code([&] { sw.install_flow(rule(0, 0, {}, {action::PushVlan{4096}})); }),
            Errc::InvalidArgument);
  EXPECT_EQ(sw.rule_count(), 0u);
}

TEST(Switch, VlanActionsOnWrongStateDrop) {
  auto sw = make_switch();
  sw.install_flow(rule(0, 0, FlowMatch{PortId(1), {}, {}, {}},
                       {action::PopVlan{}, action::Output{PortId(2)}}));
  sw.install_flow(rule(0, 0, FlowMatch{PortId(2), {}, {}, {}},
                       {action::PushVlan{9}, action::Output{PortId(3)}}));
  EXPECT_TRUE(sw.process(frame(), PortId(1)).empty());
  EXPECT_EQ(sw.process(frame(5), PortId(1))[0].frame, frame());
  EXPECT_TRUE(sw.process(frame(5), PortId(2)).empty());
  EXPECT_EQ(sw.process(frame(), PortId(2))[0].frame.tag->vid, 9);
}

TEST(Switch, MultipleOutputsAndController) {
  auto sw = make_switch();
  sw.install_flow(rule(0, 0, {}, {action::Output{PortId(2)}, action::OutputController{},
                                  action::Output{PortId(3)}}));
  const auto out = sw.process(frame(), PortId(1));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].port, PortId(2));
  EXPECT_TRUE(out[1].to_controller());
  EXPECT_EQ(out[2].port, PortId(3));
  EXPECT_EQ(out[2].frame, frame());
}

// Brute-force oracle: the winner among matching entries is the one with the
// highest priority, then the smallest install index of its (priority, match)
// key; later installs with the same key replace the actions in place.
TEST(Switch, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    auto sw = make_switch();
    struct Ref {
      std::uint16_t prio;
      FlowMatch match;
      PortId out;
    };
    std::vector<Ref> ref;
    for (int i = 0; i < 20; ++i) {
      FlowMatch m;
      if (rng() % 2) m.in_port = PortId(1 + rng() % 4);
      if (rng() % 2) {
        m.vlan = rng() % 3 == 0 ? VlanMatch::untagged()
                                : VlanMatch::exact(static_cast<std::uint16_t>(1 + rng() % 3));
      }
      if (rng() % 3 == 0) m.ethertype = rng() % 2 ? net::kEthertypeIpv4 : 0x88b5;
      const auto prio = static_cast<std::uint16_t>(rng() % 4);
      const PortId out(1 + rng() % 4);
      sw.install_flow(rule(0, prio, m, {action::Output{out}}));
      bool replaced = false;
      for (auto& r : ref) {
        if (r.prio == prio && r.match == m) {
          r.out = out;
          replaced = true;
        }
      }
      if (!replaced) ref.push_back(Ref{prio, m, out});
    }
    for (int k = 0; k < 100; ++k) {
      std::optional<std::uint16_t> vid;
      if (rng() % 2) vid = static_cast<std::uint16_t>(1 + rng() % 3);
      const auto f = frame(vid, rng() % 2 ? net::kEthertypeIpv4 : 0x88b5);
      const PortId in(1 + rng() % 4);
      const Ref* best = nullptr;
      for (const auto& r : ref) {
        const bool port_ok = !r.match.in_port || *r.match.in_port == in;
        bool vlan_ok = true;
        if (r.match.vlan) {
          vlan_ok = r.match.vlan->vid ? (vid && *vid == *r.match.vlan->vid) : !vid;
        }
        const bool type_ok = !r.match.ethertype || *r.match.ethertype == f.ethertype;
        if (port_ok && vlan_ok && type_ok && (best == nullptr || r.prio > best->prio)) best = &r;
      }
      const auto out = sw.process(f, in);
      if (best == nullptr) {
        EXPECT_TRUE(out.empty());
      } else {
        ASSERT_EQ(out.size(), 1u);
        EXPECT_EQ(out[0].port, best->out);
      }
    }
  }
}

TEST(FlowJson, RoundTrip) {
  auto sw = make_switch();
  const auto e = rule(0, 100, FlowMatch{PortId(1), VlanMatch::exact(55), 0x0800,
                                        net::MacAddr::local(9)},
                      {action::PopVlan{}, action::PushVlan{7}, action::SetVlan{8},
                       action::OutputController{}, action::Output{PortId(2)}},
                      77);
  EXPECT_EQ(entry_from_json(to_json(e)), e);
  const auto u = rule(1, 3, FlowMatch{{}, VlanMatch::untagged(), {}, {}},
                      {action::Drop{}});
  EXPECT_EQ(entry_from_json(to_json(u)), u);
  const auto g = rule(0, 0, {}, {action::GotoTable{2}});
  EXPECT_EQ(entry_from_json(to_json(g)), g);
  const auto j = to_json(e);
  EXPECT_EQ(j["table"], 0);
  EXPECT_EQ(j["match"]["vlan_vid"], 55);
  EXPECT_EQ(to_json(u)["match"]["vlan_vid"], "none");
  EXPECT_EQ(j["cookie"], 77);
}

TEST(FlowJson, DumpListsEveryTable) {
  auto sw = make_switch();
  sw.install_flow(rule(0, 0, {}, {action::GotoTable{1}}));
  sw.install_flow(rule(1, 0, {}, {action::GotoTable{2}}));
  sw.install_flow(rule(2, 0, {}, {action::Drop{}}));
  sw.process(frame(), PortId(1));
  const auto d = dump_flows(sw);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[2]["table"], 2);
  EXPECT_EQ(d[2]["counters"]["packets"], 1);
}

TEST(FlowJson, MalformedIsSchemaError) {
  EXPECT_EQ(error_code([] { action_from_json(nlohmann::json{{"type", "teleport"}}); }),
            Errc::Schema);
  EXPECT_EQ(error_code([] { entry_from_json(nlohmann::json::array()); }), Errc::Schema);
  EXPECT_EQ(error_code([] { match_from_json(nlohmann::json{{"vlan_vid", "x"}}); }),
            Errc::Schema);
}

}  // namespace
}  // namespace oshi::flow
