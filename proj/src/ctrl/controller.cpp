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

#include "oshi/ctrl/controller.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>

#include "oshi/ctrl/messages.hpp"
#include "oshi/flow/flow_json.hpp"
#include "oshi/net/frame.hpp"

namespace oshi::ctrl {

using nlohmann::json;

const PortInfo* SwitchInfo::port(net::PortId p) const {
  for (const auto& i : ports) {
    if (i.port == p) return &i;
  }
  return nullptr;
}

namespace {

unsigned parse_uint(std::string_view s, const std::string& what) {
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Errc::InvalidArgument, "bad " + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

VllEndpoint VllEndpoint::parse(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos || c1 == 0) {
    throw Error(Errc::InvalidArgument, "endpoint '" + text + "' is not NODE:PORT[:VID]");
  }
  VllEndpoint e;
  e.node = text.substr(0, c1);
  const auto c2 = text.find(':', c1 + 1);
  const std::string port = text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                                       : c2 - c1 - 1);
  e.port = net::PortId(parse_uint(port, "port"));
  if (c2 != std::string::npos) {
    const unsigned vid = parse_uint(std::string_view(text).substr(c2 + 1), "vid");
    if (vid > net::kMaxVid) throw Error(Errc::InvalidArgument, "vid out of range");
    e.vid = static_cast<std::uint16_t>(vid);
  }
  return e;
}

std::string VllEndpoint::to_string() const {
  std::string s = node + ":" + std::to_string(port.value());
  if (vid) s += ":" + std::to_string(*vid);
  return s;
}

std::vector<std::string> Route::nodes() const {
  std::vector<std::string> out;
  for (const auto& h : hops) out.push_back(h.node);
  return out;
}

ViewLink Route::link(std::size_t i) const {
  return ViewLink::make(SwitchPort{hops.at(i).dpid, *hops.at(i).out_port},
                        SwitchPort{hops.at(i + 1).dpid, *hops.at(i + 1).in_port});
}

std::string_view to_string(VllState s) {
  switch (s) {
    case VllState::Pending: return "Pending";
    case VllState::Active: return "Active";
    case VllState::Failed: return "Failed";
  }
  return "Pending";
}

json to_json(const VllEndpoint& e) {
  json j{{"node", e.node}, {"port", e.port.value()}};
  j["vid"] = e.vid ? json(*e.vid) : json(nullptr);
  return j;
}

VllEndpoint endpoint_from_json(const json& j) {
  if (j.is_string()) return VllEndpoint::parse(j.get<std::string>());
  try {
    VllEndpoint e;
    e.node = j.at("node").get<std::string>();
    e.port = net::PortId(j.at("port").get<std::uint32_t>());
    if (j.contains("vid") && !j["vid"].is_null()) {
      const auto vid = j["vid"].get<unsigned>();
      if (vid > net::kMaxVid) throw Error(Errc::InvalidArgument, "vid out of range");
      e.vid = static_cast<std::uint16_t>(vid);
    }
    return e;
  } catch (const json::exception& ex) {
    throw Error(Errc::InvalidArgument, std::string("bad endpoint: ") + ex.what());
  }
}

json to_json(const Route& r) {
  json hops = json::array();
  for (const auto& h : r.hops) {
    json jh{{"node", h.node}, {"dpid", h.dpid.value()}};
    jh["in_port"] = h.in_port ? json(h.in_port->value()) : json(nullptr);
    jh["out_port"] = h.out_port ? json(h.out_port->value()) : json(nullptr);
    hops.push_back(std::move(jh));
  }
  return json{{"nodes", r.nodes()}, {"hops", std::move(hops)}};
}

json to_json(const VllDescriptor& d) {
  return json{{"id", d.id},
              {"end_a", to_json(d.end_a)},
              {"end_b", to_json(d.end_b)},
              {"path", to_json(d.path)},
              {"vids", d.vids},
              {"cookies", d.cookies},
              {"state", std::string(to_string(d.state))},
              {"rules", d.rule_count}};
}

namespace {

// Tag rewrite taking a frame tagged `from` (nullopt: untagged) to `to`.
void retag(std::vector<flow::FlowAction>& actions, std::optional<std::uint16_t> from,
           std::optional<std::uint16_t> to) {
  if (from && to) {
    if (*from != *to) actions.push_back(flow::action::SetVlan{*to});
  } else if (from) {
    actions.push_back(flow::action::PopVlan{});
  } else if (to) {
    actions.push_back(flow::action::PushVlan{*to});
  }
}

flow::VlanMatch vlan_match(std::optional<std::uint16_t> vid) {
  return vid ? flow::VlanMatch::exact(*vid) : flow::VlanMatch::untagged();
}

void one_direction(std::map<net::Dpid, std::vector<flow::FlowEntry>>& rules,
                   const std::vector<RouteHop>& hops, const VllEndpoint& src,
                   const VllEndpoint& dst, const std::vector<std::uint16_t>& vids,
                   std::uint64_t cookie) {
  const std::size_t k = hops.size() - 1;
  if (k == 0) {
    flow::FlowEntry e;
    e.table_id = flow::kTableClassify;
    e.priority = kVllClassifyPriority;
    e.match.in_port = src.port;
    e.match.vlan = vlan_match(src.vid);
    retag(e.actions, src.vid, dst.vid);
    e.actions.push_back(flow::action::Output{dst.port});
    e.cookie = cookie;
    rules[hops[0].dpid].push_back(std::move(e));
    return;
  }
  // Ingress classification: customer frame -> first-link tag -> table 1.
  flow::FlowEntry cls;
  cls.table_id = flow::kTableClassify;
  cls.priority = kVllClassifyPriority;
  cls.match.in_port = src.port;
  cls.match.vlan = vlan_match(src.vid);
  retag(cls.actions, src.vid, vids[0]);
  cls.actions.push_back(flow::action::GotoTable{flow::kTableSbp});
  cls.cookie = cookie;
  rules[hops[0].dpid].push_back(std::move(cls));

  for (std::size_t i = 0; i <= k; ++i) {
    flow::FlowEntry e;
    e.table_id = flow::kTableSbp;
    e.priority = kVllForwardPriority;
    e.cookie = cookie;
    if (i == 0) {
      e.match.in_port = src.port;
      e.match.vlan = flow::VlanMatch::exact(vids[0]);
      e.actions.push_back(flow::action::Output{*hops[0].out_port});
    } else if (i < k) {
      e.match.in_port = *hops[i].in_port;
      e.match.vlan = flow::VlanMatch::exact(vids[i - 1]);
      retag(e.actions, vids[i - 1], vids[i]);
      e.actions.push_back(flow::action::Output{*hops[i].out_port});
    } else {
      e.match.in_port = *hops[i].in_port;
      e.match.vlan = flow::VlanMatch::exact(vids[i - 1]);
      retag(e.actions, vids[i - 1], dst.vid);
      e.actions.push_back(flow::action::Output{dst.port});
    }
    rules[hops[i].dpid].push_back(std::move(e));
  }
}

}  // namespace

std::map<net::Dpid, std::vector<flow::FlowEntry>> build_vll_rules(
    const Route& path, const VllEndpoint& a, const VllEndpoint& b,
    const std::vector<std::uint16_t>& vids, std::uint64_t cookie) {
  if (path.hops.empty() || vids.size() != path.link_count()) {
    throw Error(Errc::InvalidArgument, "vid list does not match the path");
  }
  std::map<net::Dpid, std::vector<flow::FlowEntry>> rules;
  one_direction(rules, path.hops, a, b, vids, cookie);

  Route rev;
  for (auto it = path.hops.rbegin(); it != path.hops.rend(); ++it) {
    rev.hops.push_back(RouteHop{it->node, it->dpid, it->out_port, it->in_port});
  }
  std::vector<std::uint16_t> rvids(vids.rbegin(), vids.rend());
  one_direction(rules, rev.hops, b, a, rvids, cookie);
  return rules;
}

Route shortest_route(const TopologyView& view, const std::map<net::Dpid, std::string>& names,
                     net::Dpid src, net::Dpid dst) {
  struct Edge {
    net::Dpid peer;
    net::PortId out;
    net::PortId in;
  };
  std::map<net::Dpid, std::vector<Edge>> adj;
  for (const auto& l : view.links()) {
    adj[l.a.dpid].push_back(Edge{l.b.dpid, l.a.port, l.b.port});
    adj[l.b.dpid].push_back(Edge{l.a.dpid, l.b.port, l.a.port});
  }
  const auto name = [&](net::Dpid d) -> const std::string& {
    const auto it = names.find(d);
    if (it == names.end()) throw Error(Errc::UnknownNode, "switch without a name");
    return it->second;
  };

  // Hop distances towards dst.
  std::map<net::Dpid, std::size_t> dist{{dst, 0}};
  std::deque<net::Dpid> queue{dst};
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto& e : adj[u]) {
      if (dist.emplace(e.peer, dist[u] + 1).second) queue.push_back(e.peer);
    }
  }
  if (!dist.contains(src)) {
    throw Error(Errc::NoPath, "no path from " + name(src) + " to " + name(dst));
  }

  Route r;
  r.hops.push_back(RouteHop{name(src), src, std::nullopt, std::nullopt});
  net::Dpid cur = src;
  while (cur != dst) {
    const Edge* best = nullptr;
    for (const auto& e : adj[cur]) {
      const auto it = dist.find(e.peer);
      if (it == dist.end() || it->second + 1 != dist[cur]) continue;
      if (best == nullptr) {
        best = &e;
        continue;
      }
      const auto& bn = name(best->peer);
      const auto& en = name(e.peer);
      if (en < bn || (en == bn && std::tie(e.out, e.in) < std::tie(best->out, best->in))) {
        best = &e;
      }
    }
    r.hops.back().out_port = best->out;
    r.hops.push_back(RouteHop{name(best->peer), best->peer, best->in, std::nullopt});
    cur = best->peer;
  }
  return r;
}

Controller::Controller(ControllerConfig config, ControllerHost& host)
    : config_(config), host_(host) {}

void Controller::start() {
  host_.schedule(config_.first_discovery, [this] { discovery_round(); });
}

void Controller::discovery_round() {
  ++rounds_;
  links_lost(view_.expire(host_.now(), config_.link_timeout));
  for (const auto& [dpid, sw] : switches_) {
    for (const auto& p : sw.ports) {
      if (p.kind == "virtual") continue;
      const auto frame = net::encode_frame(make_probe_frame(Probe{dpid, p.port}));
      host_.send_control(sw.address, json{{"type", "packet_out"},
                                          {"dpid", dpid.value()},
                                          {"port", p.port.value()},
                                          {"frame", to_hex(frame)}});
    }
  }
  host_.schedule(config_.discovery_interval, [this] { discovery_round(); });
}

void Controller::receive(const json& msg) {
  const auto& type = msg.at("type").get_ref<const std::string&>();
  try {
    if (type == "hello") {
      on_hello(msg);
    } else if (type == "packet_in") {
      on_packet_in(msg);
    } else if (type == "flow_mod_reply") {
      on_reply(msg);
    } else if (type == "port_status") {
      on_port_status(msg);
    } else {
      host_.log("ctrl ignoring message type " + type);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Malformed, "bad " + type + " message: " + e.what());
  }
}

void Controller::on_hello(const json& msg) {
  SwitchInfo info;
  info.dpid = net::Dpid(msg.at("dpid").get<std::uint64_t>());
  info.node = msg.at("node").get<std::string>();
  info.role = msg.at("role").get<std::string>();
  info.address = net::Ipv4Addr::parse(msg.at("address").get<std::string>());
  for (const auto& p : msg.at("ports")) {
    PortInfo pi;
    pi.port = net::PortId(p.at("port").get<std::uint32_t>());
    pi.kind = p.at("kind").get<std::string>();
    pi.facing = p.value("facing", std::string("core"));
    if (p.contains("ip_vid")) pi.ip_vid = p["ip_vid"].get<std::uint16_t>();
    info.ports.push_back(std::move(pi));
  }
  for (const auto& v : msg.value("reserved_vids", json::array())) {
    info.reserved_vids.insert(v.get<std::uint16_t>());
  }
  if (msg.contains("ip_vid") && !msg["ip_vid"].is_null()) {
    info.ip_vid = msg["ip_vid"].get<std::uint16_t>();
  }
  info.last_hello = host_.now();
  if (!switches_.contains(info.dpid)) host_.log("ctrl switch " + info.node + " registered");
  view_.add_switch(info.dpid);
  switches_[info.dpid] = std::move(info);
}

void Controller::on_packet_in(const json& msg) {
  const net::Dpid dpid(msg.at("dpid").get<std::uint64_t>());
  const net::PortId in_port(msg.at("in_port").get<std::uint32_t>());
  net::EthernetFrame frame;
  try {
    frame = net::decode_frame(from_hex(msg.at("frame").get<std::string>()));
  } catch (const Error&) {
    return;
  }
  const auto probe = parse_probe_frame(frame);
  if (!probe || !switches_.contains(dpid)) return;
  const SwitchPort from{probe->dpid, probe->port};
  const SwitchPort to{dpid, in_port};
  const auto link = ViewLink::make(from, to);
  const bool known = view_.contains(link);
  view_.observe(from, to, host_.now());
  if (!known && view_.contains(link)) {
    const auto n = names();
    host_.log("ctrl link " + n.at(link.a.dpid) + ":" + std::to_string(link.a.port.value()) +
              "-" + n.at(link.b.dpid) + ":" + std::to_string(link.b.port.value()) + " up");
  }
}

void Controller::on_port_status(const json& msg) {
  const net::Dpid dpid(msg.at("dpid").get<std::uint64_t>());
  const net::PortId port(msg.at("port").get<std::uint32_t>());
  if (!msg.at("up").get<bool>()) links_lost(view_.port_down(SwitchPort{dpid, port}));
}

void Controller::links_lost(const std::vector<ViewLink>& lost) {
  if (lost.empty()) return;
  const auto n = names();
  for (const auto& l : lost) {
    host_.log("ctrl link " + n.at(l.a.dpid) + ":" + std::to_string(l.a.port.value()) + "-" +
              n.at(l.b.dpid) + ":" + std::to_string(l.b.port.value()) + " down");
  }
  for (auto& [id, d] : vlls_) {
    if (d.state == VllState::Failed) continue;
    for (std::size_t i = 0; i < d.path.link_count(); ++i) {
      if (std::find(lost.begin(), lost.end(), d.path.link(i)) != lost.end()) {
        d.state = VllState::Failed;
        host_.log("ctrl vll " + id + " Failed");
        break;
      }
    }
  }
}

void Controller::on_reply(const json& msg) {
  const auto xid = msg.at("xid").get<std::uint64_t>();
  const auto it = outstanding_.find(xid);
  if (it == outstanding_.end()) return;
  const Outstanding out = it->second;
  outstanding_.erase(it);

  FlowModResult r;
  r.ok = msg.at("ok").get<bool>();
  if (!r.ok) {
    r.errc = errc_from_name(msg.value("errc", std::string("InvalidArgument")));
    r.error = msg.value("error", std::string());
  }
  if (msg.contains("table")) {
    r.handle = flow::RuleHandle{msg["table"].get<std::uint8_t>(), msg.at("id").get<std::uint64_t>()};
  }
  r.deleted = msg.value("deleted", std::size_t{0});

  if (out.vll.empty()) {
    results_[xid] = std::move(r);
    return;
  }
  const auto vit = vlls_.find(out.vll);
  if (vit == vlls_.end()) return;
  VllDescriptor& d = vit->second;
  if (!r.ok) {
    push_failures_[d.id] = std::string(errc_name(r.errc)) + ": " + r.error;
    host_.log("ctrl vll " + d.id + " rejected by switch: " + r.error);
    rollback(d);
    vlls_.erase(vit);
    return;
  }
  if (d.state != VllState::Pending) return;
  const bool waiting = std::any_of(outstanding_.begin(), outstanding_.end(),
                                   [&](const auto& kv) { return kv.second.vll == d.id; });
  if (!waiting) {
    d.state = VllState::Active;
    host_.log("ctrl vll " + d.id + " Active");
  }
}

std::uint64_t Controller::send_flow_mod(net::Dpid dpid, json body, const std::string& vll) {
  const auto it = switches_.find(dpid);
  if (it == switches_.end()) {
    throw Error(Errc::UnknownNode, "unknown dpid " + std::to_string(dpid.value()));
  }
  const std::uint64_t xid = next_xid_++;
  body["type"] = "flow_mod";
  body["dpid"] = dpid.value();
  body["xid"] = xid;
  outstanding_[xid] = Outstanding{dpid, vll};
  host_.send_control(it->second.address, body);
  return xid;
}

void Controller::send_delete(net::Dpid dpid, std::uint64_t cookie) {
  send_flow_mod(dpid, json{{"op", "delete"}, {"cookie", cookie}}, "");
}

std::uint64_t Controller::static_flow_push(net::Dpid dpid, const flow::FlowEntry& entry) {
  return send_flow_mod(dpid, json{{"op", "add"}, {"entry", flow::to_json(entry)}}, "");
}

const FlowModResult* Controller::result(std::uint64_t xid) const {
  const auto it = results_.find(xid);
  return it == results_.end() ? nullptr : &it->second;
}

const SwitchInfo* Controller::switch_info(const std::string& node) const {
  for (const auto& [dpid, sw] : switches_) {
    if (sw.node == node) return &sw;
  }
  return nullptr;
}

std::map<net::Dpid, std::string> Controller::names() const {
  std::map<net::Dpid, std::string> n;
  for (const auto& [dpid, sw] : switches_) n[dpid] = sw.node;
  return n;
}

Route Controller::get_route(const std::string& src, const std::string& dst) const {
  const auto* a = switch_info(src);
  if (a == nullptr) throw Error(Errc::UnknownNode, "unknown switch " + src);
  const auto* b = switch_info(dst);
  if (b == nullptr) throw Error(Errc::UnknownNode, "unknown switch " + dst);
  return shortest_route(view_, names(), a->dpid, b->dpid);
}

void Controller::check_endpoint(const VllEndpoint& e) const {
  const auto* sw = switch_info(e.node);
  if (sw == nullptr) throw Error(Errc::UnknownNode, "unknown node " + e.node);
  if (sw->role != "pe") {
    throw Error(Errc::InvalidArgument, "VLL endpoints must be PE nodes; " + e.node + " is " +
                                           sw->role);
  }
  const auto* p = sw->port(e.port);
  if (p == nullptr || p->facing != "customer") {
    throw Error(Errc::InvalidArgument, "port " + std::to_string(e.port.value()) + " on " +
                                           e.node + " is not a customer port");
  }
  if (e.vid && net::is_reserved_vid(*e.vid)) {
    throw Error(Errc::ReservedVid, "customer vid " + std::to_string(*e.vid) + " is reserved");
  }
  if (e.vid && p->ip_vid && *p->ip_vid == *e.vid) {
    throw Error(Errc::EndpointConflict, e.to_string() + " is classified to IP");
  }
  for (const auto& [id, d] : vlls_) {
    for (const auto* other : {&d.end_a, &d.end_b}) {
      if (other->node == e.node && other->port == e.port && other->vid == e.vid) {
        throw Error(Errc::EndpointConflict, e.to_string() + " is already bound to " + id);
      }
    }
  }
}

std::set<std::uint16_t> Controller::link_reserved(const ViewLink& link) const {
  std::set<std::uint16_t> r{0, net::kMaxVid};
  for (const auto dpid : {link.a.dpid, link.b.dpid}) {
    const auto it = switches_.find(dpid);
    if (it == switches_.end()) continue;
    r.insert(it->second.reserved_vids.begin(), it->second.reserved_vids.end());
    if (it->second.ip_vid) r.insert(*it->second.ip_vid);
  }
  return r;
}

std::set<std::uint16_t> Controller::first_vids_at(const VllEndpoint& e) const {
  std::set<std::uint16_t> out;
  for (const auto& [id, d] : vlls_) {
    if (d.vids.empty()) continue;
    if (d.end_a.node == e.node && d.end_a.port == e.port) out.insert(d.vids.front());
    if (d.end_b.node == e.node && d.end_b.port == e.port) out.insert(d.vids.back());
  }
  return out;
}

const VllDescriptor& Controller::push_vll(const VllRequest& request) {
  std::string id = request.id;
  if (id.empty()) {
    do {
      id = "vll-" + std::to_string(next_vll_++);
    } while (vlls_.contains(id));
  } else if (vlls_.contains(id)) {
    throw Error(Errc::EndpointConflict, "VLL id " + id + " already exists");
  }
  check_endpoint(request.end_a);
  check_endpoint(request.end_b);
  if (request.end_a.node == request.end_b.node && request.end_a.port == request.end_b.port &&
      request.end_a.vid == request.end_b.vid) {
    throw Error(Errc::EndpointConflict, "VLL endpoints coincide");
  }

  VllDescriptor d;
  d.id = id;
  d.end_a = request.end_a;
  d.end_b = request.end_b;
  d.path = get_route(request.end_a.node, request.end_b.node);

  const std::size_t k = d.path.link_count();
  const auto excl_a = first_vids_at(d.end_a);
  const auto excl_b = first_vids_at(d.end_b);
  for (std::size_t i = 0; i < k; ++i) {
    const ViewLink link = d.path.link(i);
    std::set<std::uint16_t> exclude;
    if (i == 0) exclude.insert(excl_a.begin(), excl_a.end());
    if (i + 1 == k) exclude.insert(excl_b.begin(), excl_b.end());
    const auto vid = tags_.lowest_free(link, link_reserved(link), exclude);
    if (!vid) {
      for (std::size_t j = 0; j < d.vids.size(); ++j) tags_.release(d.path.link(j), d.vids[j]);
      throw Error(Errc::TagExhausted, "no free vid on link " + d.path.hops[i].node + "-" +
                                          d.path.hops[i + 1].node);
    }
    tags_.allocate(link, *vid);
    d.vids.push_back(*vid);
  }

  const std::uint64_t cookie = kVllCookieFlag | next_xid_;
  d.cookies.push_back(cookie);
  const auto rules = build_vll_rules(d.path, d.end_a, d.end_b, d.vids, cookie);
  auto [it, inserted] = vlls_.emplace(id, std::move(d));
  VllDescriptor& stored = it->second;
  for (const auto& [dpid, entries] : rules) {
    for (const auto& e : entries) {
      send_flow_mod(dpid, json{{"op", "add"}, {"entry", flow::to_json(e)}, {"label", id}}, id);
      ++stored.rule_count;
    }
  }
  host_.log("ctrl vll " + id + " pushed over " + std::to_string(k) + " links");
  return stored;
}

void Controller::rollback(VllDescriptor& d) {
  for (std::size_t i = 0; i < d.vids.size(); ++i) tags_.release(d.path.link(i), d.vids[i]);
  d.vids.clear();
  std::set<net::Dpid> nodes;
  for (const auto& h : d.path.hops) nodes.insert(h.dpid);
  for (const auto dpid : nodes) {
    for (const auto cookie : d.cookies) send_delete(dpid, cookie);
  }
  std::erase_if(outstanding_, [&](const auto& kv) { return kv.second.vll == d.id; });
}

void Controller::delete_vll(const std::string& id) {
  const auto it = vlls_.find(id);
  if (it == vlls_.end()) throw Error(Errc::UnknownVll, "unknown VLL " + id);
  rollback(it->second);
  vlls_.erase(it);
  host_.log("ctrl vll " + id + " deleted");
}

const VllDescriptor* Controller::find_vll(const std::string& id) const {
  const auto it = vlls_.find(id);
  return it == vlls_.end() ? nullptr : &it->second;
}

std::optional<std::string> Controller::push_failure(const std::string& id) const {
  const auto it = push_failures_.find(id);
  if (it == push_failures_.end()) return std::nullopt;
  return it->second;
}

}  // namespace oshi::ctrl
