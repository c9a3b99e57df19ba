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

#include <random>

#include "harness.hpp"
#include "oshi/measure/traffic.hpp"
#include "oshi/net/ipv4.hpp"
#include "oshi/overlay/vxlan.hpp"

namespace oshi::acceptance {
namespace {

using namespace std::chrono_literals;
using ctrl::VllDescriptor;
using ctrl::VllEndpoint;
using ctrl::VllRequest;
using net::EthernetFrame;
using net::PortId;

constexpr std::uint16_t kIpPort = 7000;   // UDP port of IP-class test traffic
constexpr std::uint16_t kVllPort = 7001;  // UDP port inside VLL-class frames

std::uint64_t read_seq(std::span<const std::uint8_t> b) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

void write_seq(std::vector<std::uint8_t>& b, std::uint64_t seq) {
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(seq >> (56 - 8 * i));
}

/// Any ethertype a customer might send, except the probe ethertype (which
/// OSHI switches reserve for discovery) and VLAN TPIDs.
std::uint16_t random_ethertype(std::mt19937_64& rng) {
  for (;;) {
    const auto t = static_cast<std::uint16_t>(0x0600 + rng() % (0x10000 - 0x0600));
    if (t != net::kEthertypeProbe && t != 0x8100 && t != 0x88a8 && t != 0x9100) return t;
  }
}

net::MacAddr random_mac(std::mt19937_64& rng) {
  return net::MacAddr::local(static_cast<std::uint32_t>(rng() | 1));
}

/// Everything customer edges receive, by sink.
struct Capture {
  struct Frame {
    std::string ce;
    EthernetFrame frame;
  };
  struct Datagram {
    std::string ce;
    net::Ipv4Packet packet;
  };
  std::vector<Frame> frames;
  std::vector<Datagram> datagrams;

  void attach(topo::Deployment& d) {
    for (const auto& n : d.doc().nodes) {
      if (n.role != node::NodeRole::CustomerEdge) continue;
      auto* ce = d.router(n.id);
      const std::string id = n.id;
      ce->set_frame_sink([this, id](PortId, const EthernetFrame& f) { frames.push_back({id, f}); });
      ce->set_udp_sink([this, id](const net::Ipv4Packet& p) { datagrams.push_back({id, p}); });
    }
  }
};

using Snapshot = std::map<std::string, std::vector<flow::FlowEntry>>;

Snapshot switch_state(topo::Deployment& d) {
  Snapshot s;
  for (const auto& n : d.doc().nodes) {
    if (auto* o = d.oshi(n.id)) {
      auto e = o->scs().entries();
      for (auto& x : e) x.counters = {};
      s[n.id] = std::move(e);
    }
  }
  return s;
}

const Attachment& attachment_of(const std::vector<Attachment>& all, const std::string& pe) {
  for (const auto& a : all) {
    if (a.pe == pe) return a;
  }
  throw Error(Errc::UnknownNode, "no CE on " + pe);
}

/// Pushes `count` tagged VLLs between PE pairs whose controller route has
/// at least `min_links` links, with vids unique per customer port.
std::vector<VllDescriptor> push_random_vlls(topo::Deployment& d, std::mt19937_64& rng,
                                            int count, std::size_t min_links, Outcome& o) {
  const auto att = attachments(d.doc());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& a : att) {
    for (const auto& b : att) {
      if (a.pe < b.pe && d.get_route(a.pe, b.pe).hops.size() >= min_links + 1) {
        pairs.emplace_back(a.pe, b.pe);
      }
    }
  }
  if (pairs.empty()) {
    o.fail(str("no PE pair with a route of ", min_links, " links"));
    return {};
  }
  std::map<std::string, std::set<std::uint16_t>> used;
  const auto vid_on = [&](const std::string& pe) {
    for (;;) {
      const auto v = static_cast<std::uint16_t>(2 + rng() % 4000);
      if (used[pe].insert(v).second) return v;
    }
  };
  std::vector<VllDescriptor> out;
  for (int i = 0; i < count; ++i) {
    const auto& [a, b] = pairs[rng() % pairs.size()];
    const VllEndpoint ea{a, attachment_of(att, a).pe_port, vid_on(a)};
    const VllEndpoint eb{b, attachment_of(att, b).pe_port, vid_on(b)};
    out.push_back(d.push_vll(VllRequest{str("v", i), ea, eb}));
    if (out.back().state != ctrl::VllState::Active) o.fail(str(out.back().id, " not active"));
  }
  return out;
}

/// Per-link vid disjointness: no two VLLs share a vid on a link, and none
/// uses the IP vid of tagged coexistence.
void check_disjoint(const std::vector<VllDescriptor>& vlls, std::optional<std::uint16_t> ip_vid,
                    Outcome& o) {
  std::map<std::pair<std::string, std::uint32_t>, std::map<std::uint16_t, std::string>> by_link;
  for (const auto& v : vlls) {
    const auto& hops = v.path.hops;
    if (v.vids.size() + 1 != hops.size()) {
      o.fail(str(v.id, ": ", v.vids.size(), " vids for ", hops.size(), " hops"));
      continue;
    }
    for (std::size_t i = 0; i < v.vids.size(); ++i) {
      // Key a link by its lexically smaller end.
      auto x = std::make_pair(hops[i].node, hops[i].out_port->value());
      auto y = std::make_pair(hops[i + 1].node, hops[i + 1].in_port->value());
      const auto key = std::min(x, y);
      const auto [it, fresh] = by_link[key].emplace(v.vids[i], v.id);
      if (!fresh) {
        o.fail(str(v.id, " and ", it->second, " share vid ", v.vids[i], " on ", key.first, ":",
                   key.second));
      }
      if (ip_vid && v.vids[i] == *ip_vid) o.fail(str(v.id, " uses the IP vid"));
    }
  }
}

struct SentFrame {
  std::string to_ce;
  EthernetFrame want;
};

Outcome vll_correctness() {
  Outcome o;
  auto d = topo::Deployment::deploy(bundled_topology(), quiet());
  const auto before = switch_state(*d);
  const auto alloc_before = d->controller().allocator();
  std::mt19937_64 rng(7);

  const auto vlls = push_random_vlls(*d, rng, 50, 3, o);
  if (!o.pass) return o;
  check_disjoint(vlls, std::nullopt, o);
  std::size_t longest = 0;
  for (const auto& v : vlls) longest = std::max(longest, v.vids.size());

  const auto att = attachments(d->doc());
  Capture cap;
  cap.attach(*d);
  std::map<std::uint64_t, SentFrame> sent;
  constexpr int kFrames = 10000;
  for (int i = 0; i < kFrames; ++i) {
    const auto& v = vlls[rng() % vlls.size()];
    const bool forward = rng() % 2 == 0;
    const auto& from = forward ? v.end_a : v.end_b;
    const auto& to = forward ? v.end_b : v.end_a;
    EthernetFrame f;
    f.dst = random_mac(rng);
    f.src = random_mac(rng);
    f.tag = net::VlanTag{*from.vid, static_cast<std::uint8_t>(rng() % 8)};
    f.ethertype = random_ethertype(rng);
    f.payload.resize(8 + rng() % 1400);
    for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng());
    write_seq(f.payload, static_cast<std::uint64_t>(i));
    auto want = f;
    want.tag->vid = *to.vid;
    sent[static_cast<std::uint64_t>(i)] = SentFrame{attachment_of(att, to.node).ce, want};
    const auto& src = attachment_of(att, from.node);
    d->sim().schedule(SimTime(std::chrono::microseconds(20 * i)),
                      [&d, src, f] { d->inject(src.ce, src.ce_port, f); });
  }
  d->sim().run_for(1s);

  std::map<std::uint64_t, int> seen;
  for (const auto& [ce, f] : cap.frames) {
    const auto seq = read_seq(f.payload);
    const auto it = sent.find(seq);
    if (it == sent.end()) {
      o.fail(str(ce, " received an unknown frame"));
      continue;
    }
    ++seen[seq];
    if (ce != it->second.to_ce) o.fail(str("frame ", seq, " reached ", ce));
    if (f != it->second.want) o.fail(str("frame ", seq, " altered in transit"));
  }
  for (const auto& [seq, s] : sent) {
    if (seen[seq] != 1) o.fail(str("frame ", seq, " delivered ", seen[seq], " times"));
  }
  if (!cap.datagrams.empty()) o.fail("VLL frames surfaced as IP datagrams");

  for (const auto& v : vlls) d->delete_vll(v.id);
  d->sim().run_for(1s);
  if (switch_state(*d) != before) o.fail("switch tables differ after deleting every VLL");
  if (!(d->controller().allocator() == alloc_before)) o.fail("tag pools differ after delete");

  if (o.pass) {
    o.detail = str(vlls.size(), " concurrent VLLs (paths up to ", longest, " links), ", kFrames,
                   " frames delivered exactly once and unchanged; delete restored state");
  }
  return o;
}

Outcome coexistence_in(bool tagged) {
  Outcome o;
  auto doc = bundled_topology();
  const std::uint16_t ip_vid = 1;
  if (tagged) doc.coexistence = node::CoexistenceMode::tagged(ip_vid);
  auto d = topo::Deployment::deploy(doc, quiet(3));
  std::mt19937_64 rng(tagged ? 11 : 12);
  const auto vlls = push_random_vlls(*d, rng, 20, 2, o);
  if (!o.pass) return o;
  check_disjoint(vlls, tagged ? std::optional<std::uint16_t>(ip_vid) : std::nullopt, o);

  const auto att = attachments(d->doc());
  Capture cap;
  cap.attach(*d);
  // seq -> (intended CE, class)
  std::map<std::uint64_t, std::pair<std::string, bool>> sent;
  constexpr int kFrames = 10000;
  for (int i = 0; i < kFrames; ++i) {
    const auto seq = static_cast<std::uint64_t>(i);
    const bool vll = rng() % 2 == 0;
    const std::size_t size = 64 + rng() % 900;
    const SimTime at = std::chrono::microseconds(25 * i);
    if (vll) {
      // An IPv4 datagram addressed to the far CE, carried over the VLL: if
      // it ever leaked into the IP plane it would be delivered as UDP.
      const auto& v = vlls[rng() % vlls.size()];
      const bool forward = rng() % 2 == 0;
      const auto& from = attachment_of(att, (forward ? v.end_a : v.end_b).node);
      const auto& to = attachment_of(att, (forward ? v.end_b : v.end_a).node);
      EthernetFrame f;
      f.dst = random_mac(rng);
      f.src = random_mac(rng);
      f.tag = net::VlanTag{*(forward ? v.end_a : v.end_b).vid, 0};
      f.ethertype = net::kEthertypeIpv4;
      f.payload = net::encode_ipv4(measure::make_datagram(
          d->node(from.ce).loopback(), d->node(to.ce).loopback(), kVllPort, size, seq));
      sent[seq] = {to.ce, true};
      d->sim().schedule(at, [&d, from, f] { d->inject(from.ce, from.ce_port, f); });
    } else {
      const auto& from = att[rng() % att.size()];
      const Attachment* to = &att[rng() % att.size()];
      while (to->ce == from.ce) to = &att[rng() % att.size()];
      auto p = measure::make_datagram(d->node(from.ce).loopback(), d->node(to->ce).loopback(),
                                      kIpPort, size, seq);
      sent[seq] = {to->ce, false};
      const std::string src = from.ce;
      d->sim().schedule(at, [&d, src, p] { d->node(src).originate(p); });
    }
  }
  d->sim().run_for(2s);

  std::map<std::uint64_t, int> seen;
  std::size_t vll_count = 0;
  const auto deliver = [&](const std::string& ce, const net::Ipv4Packet& p, bool via_vll) {
    const std::uint16_t port = static_cast<std::uint16_t>((p.payload[2] << 8) | p.payload[3]);
    const auto seq = read_seq(std::span(p.payload).subspan(measure::kUdpHeaderLen));
    const auto it = sent.find(seq);
    if (it == sent.end()) return o.fail(str(ce, " received an unknown datagram"));
    const bool is_vll = it->second.second;
    if (is_vll != via_vll || (port == kVllPort) != is_vll) {
      o.fail(str(is_vll ? "VLL" : "IP", " datagram ", seq, " delivered as ",
                 via_vll ? "VLL frame" : "IP", " at ", ce));
    }
    if (ce != it->second.first) o.fail(str("datagram ", seq, " reached ", ce));
    ++seen[seq];
  };
  for (const auto& [ce, f] : cap.frames) {
    if (f.ethertype != net::kEthertypeIpv4) {
      o.fail(str(ce, " received a non-IPv4 frame"));
      continue;
    }
    deliver(ce, net::decode_ipv4(f.payload), true);
    ++vll_count;
  }
  for (const auto& [ce, p] : cap.datagrams) deliver(ce, p, false);
  for (const auto& [seq, s] : sent) {
    if (seen[seq] != 1) o.fail(str("datagram ", seq, " delivered ", seen[seq], " times"));
  }
  if (o.pass) {
    o.detail = str(kFrames, " mixed frames (", vll_count, " over ", vlls.size(),
                   " VLLs), none cross-delivered");
  }
  return o;
}

Outcome coexistence() {
  auto untagged = coexistence_in(false);
  auto tagged = coexistence_in(true);
  Outcome o;
  if (!untagged.pass) o.fail("untagged: " + untagged.detail);
  if (!tagged.pass) o.fail("tagged: " + tagged.detail);
  if (o.pass) o.detail = "untagged: " + untagged.detail + "; tagged: " + tagged.detail;
  return o;
}

// PE1 carries CE1 (IP tagged with vid 10) and CE3 (IP untagged); PE2
// carries CE2. Each mapping is checked on the classifier and end to end.
Outcome ingress_classification() {
  Outcome o;
  topo::TopologyDoc doc;
  const auto add_node = [&](const std::string& id, node::NodeRole role) {
    topo::NodeDecl n;
    n.id = id;
    n.role = role;
    doc.nodes.push_back(n);
  };
  add_node("PE1", node::NodeRole::AccessOshi);
  add_node("CR1", node::NodeRole::CoreOshi);
  add_node("PE2", node::NodeRole::AccessOshi);
  add_node("CE1", node::NodeRole::CustomerEdge);
  add_node("CE2", node::NodeRole::CustomerEdge);
  add_node("CE3", node::NodeRole::CustomerEdge);
  const auto add_link = [&](const std::string& id, const std::string& a, std::uint32_t pa,
                            const std::string& b, std::uint32_t pb) {
    topo::LinkDecl l;
    l.id = id;
    l.a = net::LinkEnd{a, PortId(pa)};
    l.b = net::LinkEnd{b, PortId(pb)};
    doc.links.push_back(l);
    return &doc.links.back();
  };
  add_link("L1", "PE1", 1, "CR1", 1);
  add_link("L2", "CR1", 2, "PE2", 1);
  add_link("L3", "CE1", 1, "PE1", 2)->ip_vid = 10;
  add_link("L4", "CE3", 1, "PE1", 3);
  add_link("L5", "CE2", 1, "PE2", 2);
  auto d = topo::Deployment::deploy(doc, quiet());
  Capture cap;
  cap.attach(*d);
  auto& pe1 = *d->oshi("PE1");
  using Kind = node::IngressDecision::Kind;

  std::uint64_t seq = 0;
  // Sends one UDP datagram over IP and reports whether CE2 got it.
  const auto ip_delivered = [&](const std::string& ce) {
    cap.datagrams.clear();
    d->node(ce).originate(measure::make_datagram(d->node(ce).loopback(),
                                                 d->node("CE2").loopback(), kIpPort, 100, ++seq));
    d->sim().run_for(100ms);
    return cap.datagrams.size() == 1 && cap.datagrams[0].ce == "CE2";
  };
  // Injects one customer frame and returns what CE2 received on its sink.
  const auto over_vll = [&](const std::string& ce, std::optional<std::uint16_t> vid) {
    cap.frames.clear();
    EthernetFrame f;
    f.dst = net::MacAddr::local(0xc2);
    f.src = net::MacAddr::local(0xc1);
    if (vid) f.tag = net::VlanTag{*vid, 0};
    f.ethertype = 0x88b6;
    f.payload = {1, 2, 3, 4, 5, 6, 7, 8};
    d->inject(ce, PortId(1), f);
    d->sim().run_for(100ms);
    return cap.frames;
  };
  const auto frame = [](std::optional<std::uint16_t> vid) {
    EthernetFrame f;
    f.ethertype = net::kEthertypeIpv4;
    if (vid) f.tag = net::VlanTag{*vid, 0};
    return f;
  };

  // Untagged traffic to the IP engine (CE3) and tagged traffic to it (CE1).
  if (pe1.classify_ingress(frame(std::nullopt), PortId(3)).kind != Kind::ToIpEngine) {
    o.fail("untagged on CE3's port is not classified to IP");
  }
  if (pe1.classify_ingress(frame(10), PortId(2)).kind != Kind::ToIpEngine) {
    o.fail("vid 10 on CE1's port is not classified to IP");
  }
  if (!ip_delivered("CE3")) o.fail("untagged IP from CE3 not delivered");
  if (!ip_delivered("CE1")) o.fail("tagged IP from CE1 not delivered");

  // Tagged traffic to a VLL, next to the IP vid on the same port.
  d->push_vll(VllRequest{"tagged", {"PE1", PortId(2), 200}, {"PE2", PortId(2), 201}});
  auto dec = pe1.classify_ingress(frame(200), PortId(2));
  if (dec.kind != Kind::ToSbp || dec.vll != "tagged") o.fail("vid 200 is not classified to VLL");
  auto got = over_vll("CE1", 200);
  if (got.size() != 1 || got[0].frame.tag->vid != 201) o.fail("tagged VLL frame not delivered");
  if (!ip_delivered("CE1")) o.fail("IP vid 10 broken by the tagged VLL");

  // Untagged traffic to a VLL overrides the IP default of CE3's port.
  d->push_vll(VllRequest{"untagged", {"PE1", PortId(3), std::nullopt}, {"PE2", PortId(2), 301}});
  dec = pe1.classify_ingress(frame(std::nullopt), PortId(3));
  if (dec.kind != Kind::ToSbp || dec.vll != "untagged") {
    o.fail("untagged on CE3's port is not classified to VLL");
  }
  got = over_vll("CE3", std::nullopt);
  if (got.size() != 1 || got[0].frame.tag->vid != 301) o.fail("untagged VLL frame not delivered");

  // Other vids on customer ports are dropped.
  if (pe1.classify_ingress(frame(999), PortId(2)).kind != Kind::Drop) o.fail("vid 999 not dropped");

  // Deleting the untagged VLL gives the port back to IP.
  d->delete_vll("untagged");
  if (!ip_delivered("CE3")) o.fail("untagged IP not restored after delete");
  if (o.pass) {
    o.detail = "untagged->IP, tagged->IP, tagged->VLL, untagged->VLL verified on the classifier "
               "and end to end";
  }
  return o;
}

Outcome encap_round_trip() {
  Outcome o;
  std::mt19937_64 rng(4789);
  const net::Ipv4Addr a(10, 1, 0, 1), b(10, 1, 0, 2);
  constexpr int kFrames = 2000;
  for (int i = 0; i < kFrames && o.pass; ++i) {
    const auto vni = static_cast<std::uint32_t>(rng() % (overlay::kMaxVni + 1));
    overlay::Tunnel tx(overlay::TunnelPort{a, b, vni, overlay::TunnelKind::VxlanKernel, PortId(1)});
    overlay::Tunnel rx(overlay::TunnelPort{b, a, vni, overlay::TunnelKind::VxlanKernel, PortId(1)});
    EthernetFrame f;
    f.dst = random_mac(rng);
    f.src = random_mac(rng);
    if (rng() % 2 == 0) {
      f.tag = net::VlanTag{static_cast<std::uint16_t>(rng() % 4095),
                           static_cast<std::uint8_t>(rng() % 8)};
    }
    f.ethertype = random_ethertype(rng);
    const std::size_t room = overlay::kMaxInnerFrame - f.wire_size();
    f.payload.resize(i == 0 ? room : rng() % std::min<std::size_t>(room + 1, 3000));
    for (auto& x : f.payload) x = static_cast<std::uint8_t>(rng());

    const auto original = net::encode_frame(f);
    const auto wire = overlay::encode_datagram(tx.encap(f));
    const auto back = rx.decap(overlay::decode_datagram(wire));
    if (net::encode_frame(back) != original) o.fail(str("frame ", i, " changed"));
    if (wire.size() != original.size() + overlay::kTunnelOverhead - net::kEthernetHeaderLen) {
      o.fail(str("frame ", i, ": datagram of ", wire.size(), " bytes"));
    }
  }
  if (o.pass) o.detail = str(kFrames, " frames bit-exact through encap, wire and decap");
  return o;
}

}  // namespace

std::vector<Criterion> vll_criteria() {
  return {{"vll-correctness", vll_correctness},
          {"coexistence", coexistence},
          {"ingress", ingress_classification},
          {"encap-round-trip", encap_round_trip}};
}

}  // namespace oshi::acceptance
