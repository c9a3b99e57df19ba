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

#include "oshi/measure/traffic.hpp"

#include <cmath>

#include "oshi/common/error.hpp"
#include "oshi/common/rng.hpp"

namespace oshi::measure {

std::string_view to_string(TrafficKind k) {
  return k == TrafficKind::UdpFlow ? "udp-flow" : "tcp-greedy";
}

TrafficKind traffic_kind_from_string(std::string_view text) {
  if (text == "udp-flow" || text == "udp") return TrafficKind::UdpFlow;
  if (text == "tcp-greedy" || text == "tcp") return TrafficKind::TcpGreedy;
  throw Error(Errc::InvalidArgument, "unknown traffic kind '" + std::string(text) + "'");
}

void validate(const TrafficSpec& s) {
  if (!(s.rate > 0) || !std::isfinite(s.rate)) {
    throw Error(Errc::InvalidArgument, "rate must be a positive number of packets/s");
  }
  if (s.size < kMinDatagram || s.size > kMaxDatagram) {
    throw Error(Errc::InvalidArgument, "size must be in [" + std::to_string(kMinDatagram) +
                                           ", " + std::to_string(kMaxDatagram) + "] bytes");
  }
  if (s.duration <= SimTime::zero()) throw Error(Errc::InvalidArgument, "duration must be > 0");
  if (s.src == s.dst) throw Error(Errc::InvalidArgument, "source and destination coincide");
  if (s.vll_vid && (net::is_reserved_vid(*s.vll_vid) || *s.vll_vid > net::kMaxVid)) {
    throw Error(Errc::InvalidArgument, "vll vid out of range");
  }
}

net::Ipv4Packet make_datagram(net::Ipv4Addr src, net::Ipv4Addr dst, std::uint16_t port,
                              std::size_t size, std::uint64_t seq) {
  net::Ipv4Packet p;
  p.src = src;
  p.dst = dst;
  p.protocol = net::kProtoUdp;
  const std::size_t udp_len = size - net::kIpv4HeaderLen;
  p.payload.assign(udp_len, 0);
  const std::uint16_t sport = 40000;
  p.payload[0] = static_cast<std::uint8_t>(sport >> 8);
  p.payload[1] = static_cast<std::uint8_t>(sport);
  p.payload[2] = static_cast<std::uint8_t>(port >> 8);
  p.payload[3] = static_cast<std::uint8_t>(port);
  p.payload[4] = static_cast<std::uint8_t>(udp_len >> 8);
  p.payload[5] = static_cast<std::uint8_t>(udp_len);
  for (int i = 0; i < 8; ++i) {
    p.payload[kUdpHeaderLen + static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(seq >> (56 - 8 * i));
  }
  return p;
}

std::uint64_t Flow::delivered() const {
  const auto* c = dst_.udp_port(port_);
  return c == nullptr ? 0 : c->packets;
}

namespace {

// The customer-facing port of a CE: the port of its first link.
net::PortId attachment_port(const topo::Deployment& d, const std::string& node) {
  for (const auto& l : d.doc().links) {
    if (l.a.node == node) return l.a.port;
    if (l.b.node == node) return l.b.port;
  }
  throw Error(Errc::InvalidArgument, node + " has no links");
}

}  // namespace

struct FlowSender {
  topo::Deployment& d;
  std::shared_ptr<Flow> flow;
  node::IpNode& src;
  net::Ipv4Addr src_addr;
  net::Ipv4Addr dst_addr;
  net::PortId src_port;
  Rng rng;
  double jitter;
  SimTime end;

  SimTime gap() {
    const double mean = 1.0 / flow->spec_.rate;
    return from_seconds(mean * (1.0 + jitter * (2.0 * rng.uniform() - 1.0)));
  }

  void send_one() {
    const auto& s = flow->spec_;
    auto packet = make_datagram(src_addr, dst_addr, flow->port_, s.size, flow->sent_);
    ++flow->sent_;
    if (s.vll_vid) {
      net::EthernetFrame f;
      f.dst = net::MacAddr::local(dst_addr.value());
      f.src = net::MacAddr::local(src_addr.value());
      f.tag = net::VlanTag{*s.vll_vid, 0};
      f.ethertype = net::kEthertypeIpv4;
      f.payload = net::encode_ipv4(packet);
      d.inject(s.src, src_port, std::move(f));
    } else {
      src.originate(std::move(packet));
    }
  }

  static void tick(const std::shared_ptr<FlowSender>& self) {
    if (self->d.now() >= self->end) {
      self->flow->finished_ = true;
      return;
    }
    self->send_one();
    self->d.sim().schedule(self->gap(), [self] { tick(self); });
  }
};

std::shared_ptr<Flow> start_flow(topo::Deployment& d, const TrafficSpec& spec,
                                 std::uint64_t seed, double jitter) {
  validate(spec);
  if (!(jitter >= 0 && jitter < 1)) throw Error(Errc::InvalidArgument, "jitter must be in [0, 1)");
  auto& src = d.node(spec.src);
  const auto& dst = d.node(spec.dst);
  const auto port = static_cast<std::uint16_t>(10000 + d.allocate_id() % 50000);
  std::shared_ptr<Flow> flow(new Flow(spec, port, dst));
  auto sender = std::make_shared<FlowSender>(FlowSender{
      d, flow, src, src.loopback(), dst.loopback(),
      spec.vll_vid ? attachment_port(d, spec.src) : net::PortId(0), Rng(seed), jitter,
      d.now() + spec.duration});
  d.sim().schedule(SimTime::zero(), [sender] { FlowSender::tick(sender); });
  return flow;
}

void check_path(topo::Deployment& d, const TrafficSpec& spec, SimTime timeout) {
  TrafficSpec one = spec;
  one.rate = 1.0;
  one.duration = std::chrono::milliseconds(1);
  validate(one);
  auto& src = d.node(spec.src);
  const auto& dst = d.node(spec.dst);
  const auto port = static_cast<std::uint16_t>(10000 + d.allocate_id() % 50000);
  std::shared_ptr<Flow> flow(new Flow(one, port, dst));
  FlowSender s{d, flow, src, src.loopback(), dst.loopback(),
               spec.vll_vid ? attachment_port(d, spec.src) : net::PortId(0), Rng(0), 0,
               d.now()};
  s.send_one();
  if (!d.sim().run_while_not([&] { return flow->delivered() > 0; }, timeout,
                             std::chrono::milliseconds(1))) {
    throw Error(Errc::Unreachable, spec.dst + " is unreachable from " + spec.src +
                                       (spec.vll_vid ? " over vid " + std::to_string(*spec.vll_vid)
                                                     : std::string(" over IP")));
  }
}

}  // namespace oshi::measure
