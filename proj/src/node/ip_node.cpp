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

#include "oshi/node/ip_node.hpp"

#include "oshi/common/error.hpp"
#include "oshi/net/ipv4.hpp"

namespace oshi::node {

using measure::CostItem;
using measure::TrafficClass;
using nlohmann::json;

namespace {

bool is_control_protocol(std::uint8_t proto) {
  return proto == net::kProtoLinkState || proto == net::kProtoControl;
}

TrafficClass class_of_protocol(std::uint8_t proto) {
  return is_control_protocol(proto) ? TrafficClass::Control : TrafficClass::Data;
}

}  // namespace

TrafficClass traffic_class(const net::EthernetFrame& frame) {
  if (frame.ethertype == net::kEthertypeProbe) return TrafficClass::Control;
  if (frame.ethertype != net::kEthertypeIpv4) return TrafficClass::Data;
  const auto proto = net::peek_ipv4_protocol(frame.payload);
  return proto && is_control_protocol(*proto) ? TrafficClass::Control : TrafficClass::Data;
}

TrafficClass traffic_class(std::span<const std::uint8_t> b) {
  if (b.size() < net::kEthernetHeaderLen) return TrafficClass::Data;
  std::size_t off = 12;
  std::uint16_t type = static_cast<std::uint16_t>(b[off] << 8 | b[off + 1]);
  if (type == net::kEthertypeVlan) {
    off += net::kVlanTagLen;
    if (b.size() < off + 2) return TrafficClass::Data;
    type = static_cast<std::uint16_t>(b[off] << 8 | b[off + 1]);
  }
  if (type == net::kEthertypeProbe) return TrafficClass::Control;
  if (type != net::kEthertypeIpv4) return TrafficClass::Data;
  const auto proto = net::peek_ipv4_protocol(b.subspan(off + 2));
  return proto && is_control_protocol(*proto) ? TrafficClass::Control : TrafficClass::Data;
}

IpNode::IpNode(NodeConfig config) : sim::Node(config.id), config_(std::move(config)) {
  engine_.add_local_address(config_.loopback);
  for (const auto& p : config_.ports) {
    if (!p.address.is_unspecified()) engine_.add_local_address(p.address);
    if (p.kind == net::PortKind::Tunnel) {
      if (!p.tunnel) {
        throw Error(Errc::InvalidArgument, config_.id + " port " +
                                               std::to_string(p.id.value()) +
                                               " is a tunnel without tunnel settings");
      }
      auto t = *p.tunnel;
      t.port = p.id;
      tunnels_.emplace(p.id, overlay::Tunnel(t));
    }
  }
}

const overlay::Tunnel* IpNode::tunnel(net::PortId port) const {
  const auto it = tunnels_.find(port);
  return it == tunnels_.end() ? nullptr : &it->second;
}

void IpNode::start() {
  for (const auto& s : config_.static_routes) {
    engine_.add_static_route(routing::FibEntry{s.prefix, s.next_hop, engine_port(s.port), 1});
  }
  if (!config_.run_routing) return;
  routing::RoutingDaemon::Config dc;
  dc.router_id = config_.loopback;
  dc.timers = config_.timers;
  dc.hello_offset = config_.hello_offset;
  for (const auto& p : config_.ports) {
    if (p.address.is_unspecified()) continue;
    dc.interfaces.push_back(routing::RouterInterface{engine_port(p.id), p.address, p.subnet,
                                                     p.cost,
                                                     p.facing == PortFacing::Customer});
  }
  for (const auto& s : config_.static_routes) {
    if (s.redistribute) dc.stubs.push_back(routing::LsaLink{net::Ipv4Addr{}, s.prefix, 1});
  }
  daemon_ = std::make_unique<routing::RoutingDaemon>(std::move(dc), *this);
  daemon_->start();
}

void IpNode::schedule(SimTime delay, std::function<void()> fn) {
  sim().schedule(delay, std::move(fn));
}

void IpNode::send_routing(net::PortId port, net::Ipv4Packet packet) {
  const auto dst = packet.dst;
  ip_emit(port, std::move(packet), dst, TrafficClass::Control);
}

void IpNode::fib_changed(const routing::Fib& fib) { engine_.set_dynamic_routes(fib); }

bool IpNode::originate(net::Ipv4Packet packet) {
  if (engine_.is_local(packet.dst)) {
    schedule(SimTime::zero(), [this, p = std::move(packet)] { deliver_local(p, net::PortId(0)); });
    return true;
  }
  const routing::FibEntry* e = engine_.route(packet.dst);
  if (e == nullptr) {
    ++ip_counters_.no_route;
    return false;
  }
  const TrafficClass cls = class_of_protocol(packet.protocol);
  meter().charge(CostItem::Ip, cls);
  const net::Ipv4Addr nh = e->next_hop.is_unspecified() ? packet.dst : e->next_hop;
  ip_emit(e->port, std::move(packet), nh, cls);
  return true;
}

bool IpNode::ping(net::Ipv4Addr dst, std::uint64_t id) {
  net::Ipv4Packet p;
  p.src = config_.loopback;
  p.dst = dst;
  p.protocol = net::kProtoIcmp;
  p.payload = {kIcmpEchoRequest, 0};
  for (int i = 7; i >= 0; --i) p.payload.push_back(static_cast<std::uint8_t>(id >> (8 * i)));
  return originate(std::move(p));
}

void IpNode::handle_ip(net::Ipv4Packet packet, net::PortId eport, TrafficClass cls) {
  meter().charge(CostItem::Ip, cls);
  auto result = engine_.forward(std::move(packet), eport);
  if (auto* f = std::get_if<routing::Forwarded>(&result)) {
    ++ip_counters_.forwarded;
    ip_emit(f->port, std::move(f->packet), f->next_hop, cls);
  } else if (auto* d = std::get_if<routing::Delivered>(&result)) {
    ++ip_counters_.delivered;
    deliver_local(d->packet, eport);
  } else {
    const auto reason = std::get<routing::Dropped>(result).reason;
    if (reason == routing::DropReason::NoRoute) {
      ++ip_counters_.no_route;
    } else {
      ++ip_counters_.ttl_expired;
    }
  }
}

void IpNode::deliver_local(const net::Ipv4Packet& packet, net::PortId eport) {
  switch (packet.protocol) {
    case net::kProtoLinkState:
      if (daemon_) {
        try {
          daemon_->receive(packet, eport);
        } catch (const Error& e) {
          log(std::string("routing packet rejected: ") + e.what());
        }
      }
      break;
    case net::kProtoControl:
      on_control(packet);
      break;
    case net::kProtoIcmp: {
      if (packet.payload.size() < 10) break;
      if (packet.payload[0] == kIcmpEchoRequest) {
        net::Ipv4Packet reply;
        reply.src = packet.dst.is_multicast() ? config_.loopback : packet.dst;
        reply.dst = packet.src;
        reply.protocol = net::kProtoIcmp;
        reply.payload = packet.payload;
        reply.payload[0] = kIcmpEchoReply;
        originate(std::move(reply));
      } else if (packet.payload[0] == kIcmpEchoReply) {
        std::uint64_t id = 0;
        for (int i = 2; i < 10; ++i) id = id << 8 | packet.payload[i];
        echo_replies_.insert(id);
      }
      break;
    }
    case net::kProtoUdp:
      ++ip_counters_.udp_packets;
      ip_counters_.udp_bytes += packet.payload.size() + net::kIpv4HeaderLen;
      count_udp(packet);
      if (udp_sink_) udp_sink_(packet);
      break;
    default:
      break;
  }
}

void IpNode::count_udp(const net::Ipv4Packet& packet) {
  if (packet.payload.size() < 4) return;
  const auto port = static_cast<std::uint16_t>(packet.payload[2] << 8 | packet.payload[3]);
  auto& c = udp_ports_[port];
  ++c.packets;
  c.bytes += packet.payload.size() + net::kIpv4HeaderLen;
}

const UdpPortCounters* IpNode::udp_port(std::uint16_t port) const {
  const auto it = udp_ports_.find(port);
  return it == udp_ports_.end() ? nullptr : &it->second;
}

void IpNode::on_control(const net::Ipv4Packet& /*packet*/) {}

net::EthernetFrame IpNode::ip_frame(net::PortId physical, const net::Ipv4Packet& packet,
                                    net::Ipv4Addr next_hop) const {
  net::EthernetFrame f;
  f.dst = net::MacAddr::local(next_hop.value());
  f.src = net::MacAddr::local((static_cast<std::uint64_t>(index()) + 1) << 16 | physical.value());
  f.ethertype = net::kEthertypeIpv4;
  f.payload = net::encode_ipv4(packet);
  return f;
}

void IpNode::transmit(net::PortId port, net::EthernetFrame frame, TrafficClass cls) {
  const auto it = tunnels_.find(port);
  if (it == tunnels_.end()) {
    send(port, std::move(frame));
    return;
  }
  try {
    send(port, it->second.encap(frame, &meter(), cls));
  } catch (const Error& e) {
    log(std::string("tunnel drop: ") + e.what());
  }
}

std::optional<net::EthernetFrame> IpNode::unwrap(net::PortId port, sim::Wire wire,
                                                 TrafficClass& cls) {
  if (auto* f = std::get_if<net::EthernetFrame>(&wire)) {
    cls = traffic_class(*f);
    return std::move(*f);
  }
  auto& d = std::get<overlay::VxlanDatagram>(wire);
  cls = traffic_class(d.inner);
  const auto it = tunnels_.find(port);
  if (it == tunnels_.end()) return std::nullopt;
  try {
    return it->second.decap(d, &meter(), cls);
  } catch (const Error&) {
    return std::nullopt;  // counted by the tunnel
  }
}

json IpNode::counters_json() const {
  const auto& m = meter();
  const auto& model = measure::kDefaultCostModel;
  json cpu{{"data_units", m.units(model, TrafficClass::Data)},
           {"control_units", m.units(model, TrafficClass::Control)}};
  json items = json::object();
  static constexpr const char* kNames[] = {"base", "ip", "scs", "vx_half", "vpn_half"};
  for (int i = 0; i < 5; ++i) {
    items[kNames[i]] = m.count(static_cast<CostItem>(i), TrafficClass::Data) +
                       m.count(static_cast<CostItem>(i), TrafficClass::Control);
  }
  cpu["counts"] = std::move(items);
  json tunnels = json::object();
  for (const auto& [port, t] : tunnels_) {
    const auto& c = t.counters();
    tunnels[std::to_string(port.value())] = {{"vni", t.config().vni},
                                             {"kind", overlay::to_string(t.config().kind)},
                                             {"encapsulated", c.encapsulated},
                                             {"decapsulated", c.decapsulated},
                                             {"vni_mismatch", c.vni_mismatch},
                                             {"malformed", c.malformed}};
  }
  return json{{"node", id()},
              {"role", std::string(to_string(role()))},
              {"ip",
               {{"forwarded", ip_counters_.forwarded},
                {"delivered", ip_counters_.delivered},
                {"no_route", ip_counters_.no_route},
                {"ttl_expired", ip_counters_.ttl_expired},
                {"udp_packets", ip_counters_.udp_packets},
                {"udp_bytes", ip_counters_.udp_bytes},
                {"non_ip_dropped", ip_counters_.non_ip_dropped}}},
              {"cpu", std::move(cpu)},
              {"tunnels", std::move(tunnels)}};
}

PlainRouter::PlainRouter(NodeConfig config) : IpNode(std::move(config)) {
  if (is_oshi(config_.role)) {
    throw Error(Errc::InvalidArgument, config_.id + ": OSHI roles need an OSHI node");
  }
  tunnel_switching_ = !tunnels_.empty();
  for (const auto& p : config_.ports) {
    if (p.customer_ip_vid) ip_vids_[p.id] = *p.customer_ip_vid;
  }
  if (config_.role == NodeRole::CustomerEdge) config_.run_routing = false;
}

void PlainRouter::receive(net::PortId port, sim::Wire wire) {
  TrafficClass cls = TrafficClass::Data;
  auto frame = unwrap(port, std::move(wire), cls);
  if (!frame) return;
  meter().charge(CostItem::Base, cls);
  if (tunnel_switching_) meter().charge(CostItem::Scs, cls);
  const auto vid = ip_vids_.find(port);
  const bool tag_ok = vid == ip_vids_.end() ? !frame->tag
                                            : frame->tag && frame->tag->vid == vid->second;
  net::Ipv4Packet packet;
  bool is_ip = tag_ok && frame->ethertype == net::kEthertypeIpv4;
  if (is_ip) {
    try {
      packet = net::decode_ipv4(frame->payload);
    } catch (const Error&) {
      is_ip = false;
    }
  }
  if (!is_ip) {
    ++ip_counters_.non_ip_dropped;
    if (frame->tag && frame->ethertype == net::kEthertypeIpv4) {
      try {
        const auto inner = net::decode_ipv4(frame->payload);
        if (inner.protocol == net::kProtoUdp) count_udp(inner);
      } catch (const Error&) {
        // not a datagram; only the sink sees it
      }
    }
    if (frame_sink_) frame_sink_(port, *frame);
    return;
  }
  handle_ip(std::move(packet), port, cls);
}

void PlainRouter::ip_emit(net::PortId port, net::Ipv4Packet packet, net::Ipv4Addr next_hop,
                          TrafficClass cls) {
  if (tunnel_switching_) meter().charge(CostItem::Scs, cls);
  auto frame = ip_frame(port, packet, next_hop);
  if (const auto vid = ip_vids_.find(port); vid != ip_vids_.end()) {
    frame.tag = net::VlanTag{vid->second, 0};
  }
  transmit(port, std::move(frame), cls);
}

void PlainRouter::carrier(net::PortId port, bool up) {
  if (daemon_) daemon_->set_interface_state(port, up);
}

}  // namespace oshi::node
