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

#include "oshi/node/oshi_node.hpp"

#include "oshi/common/error.hpp"
#include "oshi/ctrl/messages.hpp"
#include "oshi/flow/flow_json.hpp"
#include "oshi/net/ipv4.hpp"

namespace oshi::node {

using flow::FlowEntry;
using flow::FlowMatch;
using flow::VlanMatch;
using measure::CostItem;
using measure::TrafficClass;
using net::PortId;
using nlohmann::json;
namespace act = flow::action;

namespace {

constexpr std::uint16_t kProbePriority = 200;
constexpr std::uint16_t kIpPriority = 100;
constexpr std::uint16_t kCustomerDropPriority = 50;

FlowEntry rule(std::uint8_t table, std::uint16_t prio, FlowMatch m,
               std::vector<flow::FlowAction> actions) {
  FlowEntry e;
  e.table_id = table;
  e.priority = prio;
  e.match = std::move(m);
  e.actions = std::move(actions);
  return e;
}

FlowMatch on_port(PortId p) {
  FlowMatch m;
  m.in_port = p;
  return m;
}

FlowMatch untagged_ip(PortId p) {
  FlowMatch m = on_port(p);
  m.vlan = VlanMatch::untagged();
  m.ethertype = net::kEthertypeIpv4;
  return m;
}

FlowMatch tagged(PortId p, std::uint16_t vid) {
  FlowMatch m = on_port(p);
  m.vlan = VlanMatch::exact(vid);
  return m;
}

void check_ip_vid(const NodeConfig& c, std::uint16_t vid, const std::string& what) {
  if (net::is_reserved_vid(vid) || c.reserved_vids.contains(vid)) {
    throw Error(Errc::ReservedVid, c.id + ": " + what + " vid " + std::to_string(vid) +
                                       " is reserved");
  }
}

}  // namespace

std::string_view to_string(IngressDecision::Kind k) {
  switch (k) {
    case IngressDecision::Kind::ToIpEngine: return "ip";
    case IngressDecision::Kind::ToSbp: return "sbp";
    case IngressDecision::Kind::ToController: return "controller";
    case IngressDecision::Kind::Drop: return "drop";
  }
  return "?";
}

std::vector<FlowEntry> bootstrap_rules(const NodeConfig& c) {
  std::vector<FlowEntry> out;
  const auto g = [](std::uint8_t t) { return act::GotoTable{t}; };
  if (c.coexistence.is_tagged()) check_ip_vid(c, c.coexistence.ip_vid, "IP");
  for (const auto& p : c.ports) {
    const PortId v = net::virtual_port_of(p.id);
    FlowMatch probe = on_port(p.id);
    probe.ethertype = net::kEthertypeProbe;
    out.push_back(rule(flow::kTableClassify, kProbePriority, probe, {act::OutputController{}}));
    out.push_back(rule(flow::kTableClassify, kIpPriority, on_port(v), {g(flow::kTableIpBypass)}));

    std::optional<std::uint16_t> ip_vid;
    if (p.facing == PortFacing::Customer) {
      out.push_back(rule(flow::kTableClassify, kCustomerDropPriority, on_port(p.id),
                         {act::Drop{}}));
      if (p.customer_ip_vid) {
        check_ip_vid(c, *p.customer_ip_vid, "customer IP");
        ip_vid = p.customer_ip_vid;
      }
    } else if (p.facing == PortFacing::Core && c.coexistence.is_tagged()) {
      ip_vid = c.coexistence.ip_vid;
    }

    if (ip_vid) {
      out.push_back(rule(flow::kTableClassify, kIpPriority, tagged(p.id, *ip_vid),
                         {act::PopVlan{}, g(flow::kTableIpBypass)}));
      out.push_back(rule(flow::kTableIpBypass, kIpPriority, on_port(v),
                         {act::PushVlan{*ip_vid}, act::Output{p.id}}));
    } else {
      out.push_back(rule(flow::kTableClassify, kIpPriority, untagged_ip(p.id),
                         {g(flow::kTableIpBypass)}));
      out.push_back(rule(flow::kTableIpBypass, kIpPriority, on_port(v), {act::Output{p.id}}));
    }
    out.push_back(rule(flow::kTableIpBypass, kIpPriority, on_port(p.id), {act::Output{v}}));
  }
  out.push_back(rule(flow::kTableClassify, 0, FlowMatch{}, {g(flow::kTableSbp)}));
  return out;
}

OshiNode::OshiNode(NodeConfig config) : IpNode(std::move(config)), sw_(config_.dpid) {
  if (!is_oshi(config_.role)) {
    throw Error(Errc::InvalidArgument, config_.id + ": role " +
                                           std::string(to_string(config_.role)) +
                                           " is not an OSHI role");
  }
  std::vector<net::PortDesc> descs;
  for (const auto& p : config_.ports) {
    if (p.kind == net::PortKind::Virtual || p.id.value() >= net::kVirtualPortBase) {
      throw Error(Errc::PortPairing, config_.id + ": port " + std::to_string(p.id.value()) +
                                         " collides with the virtual port range");
    }
    descs.push_back(net::PortDesc{p.id, p.kind, net::virtual_port_of(p.id)});
    descs.push_back(net::PortDesc{net::virtual_port_of(p.id), net::PortKind::Virtual, p.id});
  }
  net::check_port_pairing(descs);
  for (const auto& d : descs) sw_.add_port(d.id);
  for (auto& e : bootstrap_rules(config_)) sw_.install_flow(std::move(e));
  if (config_.hosts_controller) {
    controller_ = std::make_unique<ctrl::Controller>(config_.controller_config,
                                                   static_cast<ctrl::ControllerHost&>(*this));
  }
}

void OshiNode::start() {
  IpNode::start();
  if (controller_) controller_->start();
  if (config_.controller) {
    IpNode::schedule(config_.registration_offset, [this] { register_tick(); });
  }
}

void OshiNode::register_tick() {
  to_controller(hello());
  IpNode::schedule(config_.registration_interval, [this] { register_tick(); });
}

json OshiNode::hello() const {
  json ports = json::array();
  for (const auto& p : config_.ports) {
    json pj{{"port", p.id.value()},
            {"kind", std::string(net::to_string(p.kind))},
            {"facing", std::string(to_string(p.facing))}};
    if (p.customer_ip_vid) pj["ip_vid"] = *p.customer_ip_vid;
    ports.push_back(std::move(pj));
  }
  json msg{{"type", "hello"},
           {"dpid", config_.dpid.value()},
           {"node", config_.id},
           {"role", std::string(to_string(config_.role))},
           {"address", config_.loopback.to_string()},
           {"ports", std::move(ports)},
           {"reserved_vids", config_.reserved_vids}};
  if (config_.coexistence.is_tagged()) msg["ip_vid"] = config_.coexistence.ip_vid;
  return msg;
}

void OshiNode::receive(PortId port, sim::Wire wire) {
  TrafficClass cls = TrafficClass::Data;
  auto frame = unwrap(port, std::move(wire), cls);
  if (!frame) return;
  meter().charge(CostItem::Base, cls);
  scs_pass(std::move(*frame), port, cls);
}

void OshiNode::scs_pass(net::EthernetFrame frame, PortId in_port, TrafficClass cls) {
  meter().charge(CostItem::Scs, cls);
  ++counters_.scs_traversals;
  const bool from_wire = !net::is_virtual_port_id(in_port);
  for (auto& em : sw_.process(std::move(frame), in_port)) {
    if (em.to_controller()) {
      ++counters_.packet_ins;
      to_controller(json{{"type", "packet_in"},
                         {"dpid", config_.dpid.value()},
                         {"in_port", in_port.value()},
                         {"frame", ctrl::to_hex(net::encode_frame(em.frame))}});
      continue;
    }
    const PortId out = *em.port;
    if (!net::is_virtual_port_id(out)) {
      if (from_wire) ++counters_.sbp_frames;
      transmit(out, std::move(em.frame), cls);
      continue;
    }
    if (em.frame.tag || em.frame.ethertype != net::kEthertypeIpv4) {
      ++ip_counters_.non_ip_dropped;
      continue;
    }
    net::Ipv4Packet packet;
    try {
      packet = net::decode_ipv4(em.frame.payload);
    } catch (const Error&) {
      ++ip_counters_.non_ip_dropped;
      continue;
    }
    handle_ip(std::move(packet), out, cls);
  }
}

void OshiNode::ip_emit(PortId port, net::Ipv4Packet packet, net::Ipv4Addr next_hop,
                       TrafficClass cls) {
  scs_pass(ip_frame(net::physical_port_of(port), packet, next_hop), port, cls);
}

void OshiNode::carrier(PortId port, bool up) {
  if (daemon_) daemon_->set_interface_state(net::virtual_port_of(port), up);
  if (config_.controller) {
    to_controller(json{{"type", "port_status"},
                       {"dpid", config_.dpid.value()},
                       {"port", port.value()},
                       {"up", up}});
  }
}

void OshiNode::to_controller(const json& msg) {
  if (config_.controller) send_control(*config_.controller, msg);
}

void OshiNode::send_control(net::Ipv4Addr dst, const json& msg) {
  ++counters_.control_sent;
  if (dst == config_.loopback) {
    IpNode::schedule(SimTime::zero(), [this, msg] { handle_message(msg); });
    return;
  }
  net::Ipv4Packet p;
  p.src = config_.loopback;
  p.dst = dst;
  p.protocol = net::kProtoControl;
  p.payload = ctrl::encode_message(msg);
  if (!originate(std::move(p))) ++counters_.control_unroutable;
}

void OshiNode::on_control(const net::Ipv4Packet& packet) {
  json msg;
  try {
    msg = ctrl::decode_message(packet.payload);
  } catch (const Error& e) {
    log(std::string("control message dropped: ") + e.what());
    return;
  }
  handle_message(msg);
}

void OshiNode::handle_message(const json& msg) {
  const std::string type = msg.value("type", std::string());
  try {
    if (type == "flow_mod" || type == "packet_out") {
      if (msg.at("dpid").get<std::uint64_t>() != config_.dpid.value()) return;
      if (type == "flow_mod") {
        apply_flow_mod(msg);
      } else {
        apply_packet_out(msg);
      }
    } else if (controller_) {
      controller_->receive(msg);
    }
  } catch (const Error& e) {
    log("control " + type + " rejected: " + e.what());
  } catch (const json::exception& e) {
    log("control " + type + " malformed: " + e.what());
  }
}

void OshiNode::apply_flow_mod(const json& msg) {
  ++counters_.flow_mods;
  json reply{{"type", "flow_mod_reply"},
             {"dpid", config_.dpid.value()},
             {"xid", msg.at("xid")}};
  try {
    const std::string op = msg.at("op").get<std::string>();
    if (op == "add") {
      FlowEntry e = flow::entry_from_json(msg.at("entry"));
      const std::uint64_t cookie = e.cookie;
      const auto h = sw_.install_flow(std::move(e));
      if (msg.contains("label")) labels_[cookie] = msg["label"].get<std::string>();
      reply["ok"] = true;
      reply["table"] = h.table_id;
      reply["id"] = h.id;
    } else if (op == "delete") {
      const auto cookie = msg.at("cookie").get<std::uint64_t>();
      reply["ok"] = true;
      reply["deleted"] = sw_.delete_flows(cookie);
      labels_.erase(cookie);
    } else {
      throw Error(Errc::InvalidArgument, "unknown flow_mod op '" + op + "'");
    }
  } catch (const Error& e) {
    ++counters_.flow_mods_rejected;
    reply["ok"] = false;
    reply["errc"] = std::string(errc_name(e.code()));
    reply["error"] = e.what();
  } catch (const json::exception& e) {
    ++counters_.flow_mods_rejected;
    reply["ok"] = false;
    reply["errc"] = std::string(errc_name(Errc::Schema));
    reply["error"] = e.what();
  }
  to_controller(reply);
}

void OshiNode::apply_packet_out(const json& msg) {
  const PortId port(msg.at("port").get<std::uint32_t>());
  if (!sw_.has_port(port) || net::is_virtual_port_id(port)) {
    throw Error(Errc::UnknownPort, "packet_out on unknown port " + std::to_string(port.value()));
  }
  auto frame = net::decode_frame(ctrl::from_hex(msg.at("frame").get<std::string>()));
  const TrafficClass cls = traffic_class(frame);
  meter().charge(CostItem::Scs, cls);
  transmit(port, std::move(frame), cls);
}

IngressDecision OshiNode::classify_ingress(const net::EthernetFrame& frame, PortId port) const {
  IngressDecision d;
  const FlowEntry* e = sw_.peek(flow::kTableClassify, frame, port);
  if (e == nullptr) return d;
  d.cookie = e->cookie;
  for (const auto& a : e->actions) {
    if (std::holds_alternative<act::Drop>(a)) return d;
    if (std::holds_alternative<act::OutputController>(a)) {
      d.kind = IngressDecision::Kind::ToController;
      return d;
    }
    if (std::holds_alternative<act::Output>(a)) d.kind = IngressDecision::Kind::ToSbp;
    if (const auto* g = std::get_if<act::GotoTable>(&a)) {
      d.kind = g->table == flow::kTableIpBypass ? IngressDecision::Kind::ToIpEngine
                                                : IngressDecision::Kind::ToSbp;
    }
  }
  if (d.kind == IngressDecision::Kind::ToSbp) {
    const auto it = labels_.find(e->cookie);
    if (it != labels_.end()) d.vll = it->second;
  }
  return d;
}

json OshiNode::ingress_policy() const {
  json out = json::array();
  const auto entries = sw_.entries();
  for (const auto& p : config_.ports) {
    if (p.facing != PortFacing::Customer) continue;
    json vlls = json::array();
    for (const auto& e : entries) {
      if (e.table_id != flow::kTableClassify || e.match.in_port != p.id) continue;
      if ((e.cookie & ctrl::kVllCookieFlag) == 0) continue;
      json v{{"cookie", e.cookie}};
      v["vlan"] = e.match.vlan && e.match.vlan->vid ? json(*e.match.vlan->vid) : json("none");
      const auto it = labels_.find(e.cookie);
      if (it != labels_.end()) v["vll"] = it->second;
      vlls.push_back(std::move(v));
    }
    json ip = p.customer_ip_vid ? json{{"mode", "tagged"}, {"vid", *p.customer_ip_vid}}
                                : json{{"mode", "untagged"}};
    out.push_back(json{{"port", p.id.value()}, {"ip", std::move(ip)}, {"vlls", std::move(vlls)}});
  }
  return out;
}

json OshiNode::counters_json() const {
  json j = IpNode::counters_json();
  const auto& sc = sw_.counters();
  j["scs"] = {{"rules", sw_.rule_count()},
              {"traversals", counters_.scs_traversals},
              {"sbp_frames", counters_.sbp_frames},
              {"packets_in", sc.packets_in},
              {"emitted", sc.packets_emitted},
              {"dropped", sc.packets_dropped},
              {"to_controller", sc.packets_to_controller}};
  j["management"] = {{"packet_ins", counters_.packet_ins},
                     {"flow_mods", counters_.flow_mods},
                     {"flow_mods_rejected", counters_.flow_mods_rejected},
                     {"control_sent", counters_.control_sent},
                     {"control_unroutable", counters_.control_unroutable}};
  return j;
}

}  // namespace oshi::node
