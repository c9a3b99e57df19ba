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

#include <cmath>

#include "harness.hpp"
#include "oshi/measure/experiments.hpp"

namespace oshi::acceptance {
namespace {

using namespace std::chrono_literals;
using measure::Profile;

Outcome calibration() {
  Outcome o;
  const Stopwatch watch;
  const auto& m = measure::kDefaultCostModel;
  const measure::CalibrationTargets t;
  const std::pair<Profile, double> targets[] = {{Profile::RouterIpPlain, t.router_ip_plain},
                                                {Profile::OshiIpPlain, t.oshi_ip_plain},
                                                {Profile::OshiIpVxlan, t.oshi_ip_vxlan},
                                                {Profile::OshiVllVxlan, t.oshi_vll_vxlan},
                                                {Profile::OshiIpVpn, t.oshi_ip_vpn}};
  double worst_rate = 0;
  for (const auto& [p, want] : targets) {
    const double err = std::abs(measure::saturation_rate(m, p) - want) / want;
    worst_rate = std::max(worst_rate, err);
    if (err > 0.005) o.fail(str(to_string(p), " saturates at ", measure::saturation_rate(m, p)));
  }

  // Measured load at 2500 p/s on the experiment topology, every profile.
  constexpr double kRate = 2500;
  std::map<Profile, double> load;
  double worst_load = 0;
  for (const auto p : {Profile::RouterIpPlain, Profile::OshiIpPlain, Profile::OshiIpVxlan,
                       Profile::OshiIpVpn, Profile::OshiVllPlain, Profile::OshiVllVxlan,
                       Profile::RouterIpVxlan}) {
    auto d = topo::Deployment::deploy(measure::experiment_topology(p), quiet());
    measure::TrafficSpec spec;
    spec.src = "CE1";
    spec.dst = "CE2";
    spec.rate = kRate;
    if (measure::is_vll_profile(p)) spec.vll_vid = measure::kExperimentVid;
    measure::UdpExperimentOptions opt;
    opt.nodes = std::vector<std::string>{measure::measured_node(p)};
    const auto stats = measure::run_udp_experiment(*d, spec, m, opt);
    load[p] = stats.avg.at(measure::measured_node(p));
    const double want = kRate * measure::per_packet_cost(m, p);
    const double err = std::abs(load[p] - want) / want;
    worst_load = std::max(worst_load, err);
    if (err > 0.01) o.fail(str(to_string(p), " load ", load[p], " vs analytic ", want));
  }

  if (!(load[Profile::OshiVllPlain] < load[Profile::OshiIpPlain])) o.fail("VLL load >= IP load");
  if (!(load[Profile::OshiVllVxlan] < load[Profile::OshiIpVxlan])) {
    o.fail("VLL load >= IP load over vxlan");
  }
  const double plain = measure::saturation_rate(m, Profile::OshiIpPlain);
  const double vpn = measure::saturation_rate(m, Profile::OshiIpVpn);
  const double vxlan = measure::saturation_rate(m, Profile::OshiIpVxlan);
  if (!(vpn <= plain / 3.5)) o.fail(str("vpn rate ", vpn, " above plain / 3.5"));
  const double penalty = (plain - vxlan) / plain;
  if (!(penalty <= 0.10)) o.fail(str("vxlan penalty ", penalty));

  const double secs = watch.seconds();
  if (secs >= 60) o.fail(str("took ", secs, " s"));
  if (o.pass) {
    o.detail = str("rates within ", fixed(worst_rate * 100, 4), "%, loads within ",
                   fixed(worst_load * 100, 3), "%; vpn ", fixed(plain / vpn), "x slower, vxlan ",
                   "penalty ", fixed(penalty * 100, 1), "%, VLL/IP load ",
                   fixed(load[Profile::OshiVllPlain] / load[Profile::OshiIpPlain], 3));
  }
  return o;
}

Outcome throughput_ordering() {
  Outcome o;
  auto d = topo::Deployment::deploy(bundled_topology(), quiet());
  const auto r = measure::run_throughput_experiment(*d, {}, measure::kDefaultCostModel);
  if (!(r.vll_pps > r.ip_pps)) o.fail(str("VLL ", r.vll_pps, " p/s vs IP ", r.ip_pps, " p/s"));
  if (o.pass) {
    o.detail = str(r.src, "->", r.dst, " over ", r.vll_path.size(), " OSHI nodes: VLL ",
                   std::round(r.vll_mbps), " Mb/s > IP ", std::round(r.ip_mbps),
                   " Mb/s (reference only: 1555 / 1150)");
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  measure::ExperimentOptions opt;
  opt.rates = {1000, 2500};
  opt.udp.runs = 3;
  opt.udp.samples = 6;
  opt.udp.discard = 3;
  opt.udp.seed = 42;
  opt.duration = 13s;
  opt.topology = bundled_topology();
  opt.throughput.packets = 300;
  std::size_t bytes = 0;
  for (const char e : {'a', 'b', 'c', 'd'}) {
    const auto first = measure::run_experiment(e, opt).dump();
    const auto second = measure::run_experiment(e, opt).dump();
    if (first != second) o.fail(str("experiment ", e, " differs between runs"));
    bytes += first.size();
  }
  if (o.pass) o.detail = str("experiments a-d byte-identical across repeats (", bytes, " bytes)");
  return o;
}

}  // namespace

std::vector<Criterion> measure_criteria() {
  return {{"calibration", calibration},
          {"throughput-ordering", throughput_ordering},
          {"determinism", determinism}};
}

}  // namespace oshi::acceptance
