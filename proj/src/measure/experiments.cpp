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

#include "oshi/measure/experiments.hpp"

#include "oshi/common/error.hpp"

namespace oshi::measure {

using nlohmann::json;

namespace {

bool is_router_profile(Profile p) {
  return p == Profile::RouterIpPlain || p == Profile::RouterIpVxlan;
}

topo::Overlay overlay_of(Profile p) {
  switch (p) {
    case Profile::OshiIpVxlan:
    case Profile::OshiVllVxlan:
    case Profile::RouterIpVxlan: return topo::Overlay::Vxlan;
    case Profile::OshiIpVpn: return topo::Overlay::Vpn;
    default: return topo::Overlay::None;
  }
}

topo::LinkDecl make_link(std::string id, std::string a, std::uint32_t pa, std::string b,
                         std::uint32_t pb, topo::Overlay overlay) {
  topo::LinkDecl l;
  l.id = std::move(id);
  l.a = net::LinkEnd{std::move(a), net::PortId(pa)};
  l.b = net::LinkEnd{std::move(b), net::PortId(pb)};
  l.overlay = overlay;
  return l;
}

// The PE port a CE is attached to.
ctrl::VllEndpoint customer_endpoint(const topo::TopologyDoc& doc, const std::string& ce,
                                    std::uint16_t vid) {
  for (const auto& l : doc.links) {
    if (l.a.node == ce) return ctrl::VllEndpoint{l.b.node, l.b.port, vid};
    if (l.b.node == ce) return ctrl::VllEndpoint{l.a.node, l.a.port, vid};
  }
  throw Error(Errc::InvalidArgument, ce + " has no links");
}

double path_data_units(const topo::Deployment& d, const CostModel& model) {
  double sum = 0;
  for (const auto& n : d.doc().nodes) {
    if (n.role == node::NodeRole::CustomerEdge) continue;
    sum += d.node(n.id).meter().units(model, TrafficClass::Data);
  }
  return sum;
}

// Sends `packets` datagrams at a rate far below saturation and returns the
// data-class units charged per delivered packet.
double measure_cost(topo::Deployment& d, const TrafficSpec& base, int packets,
                    const CostModel& model) {
  check_path(d, base);
  TrafficSpec spec = base;
  spec.rate = 1000;
  spec.duration = from_seconds(packets / spec.rate);
  const double before = path_data_units(d, model);
  const auto flow = start_flow(d, spec, 1, 0.0);
  d.sim().run_while_not([&] { return flow->finished() && flow->delivered() == flow->sent(); },
                        spec.duration + std::chrono::seconds(5), std::chrono::milliseconds(100));
  if (flow->delivered() == 0) {
    throw Error(Errc::Unreachable, base.dst + " received nothing from " + base.src);
  }
  return (path_data_units(d, model) - before) / static_cast<double>(flow->delivered());
}

}  // namespace

bool is_vll_profile(Profile p) {
  return p == Profile::OshiVllPlain || p == Profile::OshiVllVxlan;
}

std::string measured_node(Profile p) { return is_router_profile(p) ? "R1" : "CR1"; }

topo::TopologyDoc experiment_topology(Profile p) {
  topo::TopologyDoc doc;
  const std::string m = measured_node(p);
  doc.nodes = {
      topo::NodeDecl{"CE1", node::NodeRole::CustomerEdge, {}, std::nullopt, nullptr},
      topo::NodeDecl{"PE1", node::NodeRole::AccessOshi, {}, std::nullopt, nullptr},
      topo::NodeDecl{m, is_router_profile(p) ? node::NodeRole::PlainRouter
                                             : node::NodeRole::CoreOshi,
                     {}, std::nullopt, nullptr},
      topo::NodeDecl{"PE2", node::NodeRole::AccessOshi, {}, std::nullopt, nullptr},
      topo::NodeDecl{"CE2", node::NodeRole::CustomerEdge, {}, std::nullopt, nullptr},
  };
  const auto ov = overlay_of(p);
  doc.links = {
      make_link("A1", "CE1", 1, "PE1", 1, topo::Overlay::None),
      make_link("L1", "PE1", 2, m, 1, ov),
      make_link("L2", m, 2, "PE2", 2, ov),
      make_link("A2", "PE2", 1, "CE2", 1, topo::Overlay::None),
  };
  if (is_vll_profile(p)) {
    doc.vlls.push_back(topo::VllDecl{"exp", customer_endpoint(doc, "CE1", kExperimentVid),
                                     customer_endpoint(doc, "CE2", kExperimentVid)});
  }
  return doc;
}

json ThroughputResult::to_json() const {
  return json{{"src", src},           {"dst", dst},
              {"vll_cost", vll_cost}, {"ip_cost", ip_cost},
              {"vll_pps", vll_pps},   {"ip_pps", ip_pps},
              {"vll_mbps", vll_mbps}, {"ip_mbps", ip_mbps},
              {"vll_path", vll_path}};
}

ThroughputResult run_throughput_experiment(topo::Deployment& d, const ThroughputSpec& spec,
                                           const CostModel& model) {
  if (spec.packets < 1) throw Error(Errc::InvalidArgument, "packets must be >= 1");
  if (!(spec.budget > 0)) throw Error(Errc::InvalidArgument, "budget must be > 0");
  ThroughputResult r;
  r.src = spec.src;
  r.dst = spec.dst;
  for (const auto& n : d.doc().nodes) {
    if (n.role != node::NodeRole::CustomerEdge) continue;
    if (spec.src.empty() && r.src.empty()) r.src = n.id;
    if (spec.dst.empty()) r.dst = n.id;
  }
  if (r.src.empty() || r.dst.empty()) {
    throw Error(Errc::InvalidArgument, "throughput needs two customer edges");
  }

  TrafficSpec ip;
  ip.src = r.src;
  ip.dst = r.dst;
  ip.kind = TrafficKind::TcpGreedy;
  ip.size = spec.size;
  r.ip_cost = measure_cost(d, ip, spec.packets, model);

  const auto vll = d.push_vll(ctrl::VllRequest{"throughput",
                                               customer_endpoint(d.doc(), r.src, spec.vid),
                                               customer_endpoint(d.doc(), r.dst, spec.vid)});
  r.vll_path = vll.path.nodes();
  TrafficSpec over_vll = ip;
  over_vll.vll_vid = spec.vid;
  r.vll_cost = measure_cost(d, over_vll, spec.packets, model);
  d.delete_vll(vll.id);

  const double bits = static_cast<double>(spec.size) * 8 / 1e6;
  r.ip_pps = spec.budget / r.ip_cost;
  r.vll_pps = spec.budget / r.vll_cost;
  r.ip_mbps = r.ip_pps * bits;
  r.vll_mbps = r.vll_pps * bits;
  return r;
}

std::vector<Profile> experiment_profiles(char experiment) {
  switch (experiment) {
    case 'a': return {Profile::RouterIpPlain, Profile::OshiIpPlain};
    case 'b': return {Profile::OshiIpPlain, Profile::OshiIpVxlan, Profile::OshiIpVpn};
    case 'c': return {Profile::RouterIpVxlan, Profile::OshiIpVxlan, Profile::OshiVllVxlan};
    case 'd': return {};
    default: throw Error(Errc::InvalidArgument, "experiment must be one of a, b, c, d");
  }
}

json run_experiment(char experiment, const ExperimentOptions& o) {
  const auto profiles = experiment_profiles(experiment);
  topo::DeployOptions deploy;
  deploy.seed = o.udp.seed;
  deploy.log_events = false;
  json out{{"experiment", std::string(1, experiment)}, {"seed", o.udp.seed}};

  if (experiment == 'd') {
    const auto doc = o.topology ? *o.topology : experiment_topology(Profile::OshiIpPlain);
    auto d = topo::Deployment::deploy(doc, deploy);
    out["throughput"] = run_throughput_experiment(*d, o.throughput, o.model).to_json();
    // Measured on real hardware with a different cost structure; not a target.
    out["reference"] = json{{"vll_mbps", 1555}, {"ip_mbps", 1150}};
    return out;
  }

  json cases = json::array();
  for (const auto p : profiles) {
    auto d = topo::Deployment::deploy(experiment_topology(p), deploy);
    const std::string m = measured_node(p);
    for (const double rate : o.rates) {
      TrafficSpec spec;
      spec.src = "CE1";
      spec.dst = "CE2";
      spec.rate = rate;
      spec.size = o.size;
      spec.duration = o.duration;
      if (is_vll_profile(p)) spec.vll_vid = kExperimentVid;
      const auto stats = run_udp_experiment(*d, spec, o.model, o.udp);
      cases.push_back(json{{"profile", std::string(to_string(p))},
                           {"measured", m},
                           {"rate", rate},
                           {"saturation_rate", saturation_rate(o.model, p)},
                           {"analytic_load", rate * per_packet_cost(o.model, p)},
                           {"stats", export_stats(stats)}});
    }
  }
  out["cases"] = std::move(cases);
  return out;
}

}  // namespace oshi::measure
