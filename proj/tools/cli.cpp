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

#include "cli.hpp"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oshi/api/server.hpp"
#include "oshi/common/error.hpp"
#include "oshi/flow/flow_json.hpp"
#include "oshi/measure/experiments.hpp"
#include "oshi/topo/deployment.hpp"
#include "oshi/topo/generator.hpp"

#ifndef OSHI_SIM_DATA_DIR
#define OSHI_SIM_DATA_DIR "data"
#endif

namespace oshi::cli {

using nlohmann::json;

std::string bundled_topology() { return OSHI_SIM_DATA_DIR "/topologies/example30.json"; }

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

void write_json(const json& j, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + path);
  f << j.dump(2) << "\n";
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + path);
}

// OSHI_SIM_SEED, when set, wins over --seed.
std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("OSHI_SIM_SEED");
  if (env == nullptr || *env == '\0') return flag;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, std::string("OSHI_SIM_SEED is not a number: ") + env);
  }
}

std::unique_ptr<topo::Deployment> deploy_file(const std::string& path, std::uint64_t seed) {
  topo::DeployOptions o;
  o.seed = effective_seed(seed);
  return topo::Deployment::deploy(topo::load_topology_file(path), o);
}

// Common flags of commands that deploy a topology file.
struct DeployFlags {
  std::string topo;
  std::uint64_t seed = 1;
  std::string output = "-";
};

void add_deploy_flags(CLI::App* c, DeployFlags& f, bool topo_required) {
  auto* t = c->add_option("--topo", f.topo, "topology JSON file");
  if (topo_required) t->required();
  c->add_option("--seed", f.seed, "deployment seed (OSHI_SIM_SEED overrides)");
  c->add_option("-o,--output", f.output, "output file, '-' for stdout");
}

json deploy_summary(topo::Deployment& d) {
  const auto r = d.reachability();
  json vlls = json::array();
  for (const auto& [id, v] : d.controller().vlls()) vlls.push_back(ctrl::to_json(v));
  return json{{"nodes", d.doc().nodes.size()},
              {"links", d.doc().links.size()},
              {"deploy_time_s", to_seconds(d.now())},
              {"routing_converged", d.routing_converged()},
              {"discovery_complete", d.discovery_complete()},
              {"discovered_links", d.controller().view().links().size()},
              {"controller", d.doc().controller_node().value_or("")},
              {"vlls", vlls},
              {"reachability", json{{"pairs", r.pairs}, {"reached", r.reached},
                                    {"ratio", r.ratio()}}}};
}

measure::Profile ip_profile(const std::string& name) {
  if (name == "plain") return measure::Profile::OshiIpPlain;
  if (name == "vxlan") return measure::Profile::OshiIpVxlan;
  if (name == "vpn") return measure::Profile::OshiIpVpn;
  throw Error(Errc::InvalidArgument, "profile must be plain, vxlan or vpn");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator of hybrid IP/SDN networks", "oshi-sim"};
  app.require_subcommand(1);

  // gen
  topo::GeneratorParams gen;
  std::string gen_model = "er", gen_overlay = "none", gen_out = "-";
  std::optional<std::uint16_t> gen_tagged;
  auto* c_gen = app.add_subcommand("gen", "generate a random topology");
  c_gen->add_option("--model", gen_model, "er, ba or waxman");
  c_gen->add_option("--nodes", gen.nodes, "number of OSHI nodes");
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--pe-fraction", gen.pe_fraction, "share of nodes that are PEs");
  c_gen->add_option("--p", gen.p, "erdos-renyi edge probability");
  c_gen->add_option("--m", gen.m, "barabasi-albert edges per new node");
  c_gen->add_option("--alpha", gen.alpha, "waxman distance scale");
  c_gen->add_option("--beta", gen.beta, "waxman edge probability");
  c_gen->add_option("--overlay", gen_overlay, "none, vxlan or vpn on core links");
  c_gen->add_option("--tagged", gen_tagged, "tagged coexistence with this IP vid");
  c_gen->add_option("-o,--output", gen_out, "output file, '-' for stdout");

  // deploy
  DeployFlags dep;
  auto* c_deploy = app.add_subcommand("deploy", "deploy a topology and report convergence");
  add_deploy_flags(c_deploy, dep, true);

  // vll
  DeployFlags vf;
  std::string vll_from, vll_to, vll_id, vll_save;
  auto* c_vll = app.add_subcommand("vll", "provision virtual leased lines");
  c_vll->require_subcommand(1);
  auto* c_vadd = c_vll->add_subcommand("add", "push a VLL");
  add_deploy_flags(c_vadd, vf, true);
  c_vadd->add_option("--from", vll_from, "PE:port[:vid]")->required();
  c_vadd->add_option("--to", vll_to, "PE:port[:vid]")->required();
  c_vadd->add_option("--id", vll_id);
  c_vadd->add_option("--save", vll_save, "write the topology with the VLL declared");
  auto* c_vdel = c_vll->add_subcommand("del", "delete a VLL");
  add_deploy_flags(c_vdel, vf, true);
  c_vdel->add_option("--id", vll_id)->required();
  c_vdel->add_option("--save", vll_save, "write the topology without the VLL");
  auto* c_vlist = c_vll->add_subcommand("list", "list VLLs");
  add_deploy_flags(c_vlist, vf, true);

  // traffic
  DeployFlags tf;
  measure::TrafficSpec ts;
  ts.src = "CE1";
  ts.dst = "CE2";
  double duration_s = 60;
  std::string profile = "plain";
  std::optional<std::uint16_t> traffic_vid;
  auto* c_traffic = app.add_subcommand("traffic", "run one UDP flow and report node loads");
  add_deploy_flags(c_traffic, tf, false);
  c_traffic->add_option("--src", ts.src);
  c_traffic->add_option("--dst", ts.dst);
  c_traffic->add_option("--rate", ts.rate, "packets/s");
  c_traffic->add_option("--size", ts.size, "datagram bytes");
  c_traffic->add_option("--duration", duration_s, "simulated seconds");
  auto* o_profile =
      c_traffic->add_option("--profile", profile, "plain, vxlan or vpn overlay on core links");
  c_traffic->add_option("--vll-vid", traffic_vid, "send tagged frames into a VLL");

  // measure
  measure::ExperimentOptions mo;
  std::string experiment, m_topo, m_out = "-";
  double m_duration = 40;
  auto* c_measure = app.add_subcommand("measure", "run an experiment");
  c_measure->add_option("--experiment", experiment, "a, b, c or d")->required();
  c_measure->add_option("--seed", mo.udp.seed);
  c_measure->add_option("--rates", mo.rates, "packet rates for a-c");
  c_measure->add_option("--runs", mo.udp.runs);
  c_measure->add_option("--samples", mo.udp.samples);
  c_measure->add_option("--discard", mo.udp.discard);
  c_measure->add_option("--size", mo.size, "datagram bytes for a-c");
  c_measure->add_option("--duration", m_duration, "simulated seconds per run for a-c");
  c_measure->add_option("--topo", m_topo, "topology for d (default: bundled)");
  c_measure->add_option("--src", mo.throughput.src, "source CE for d");
  c_measure->add_option("--dst", mo.throughput.dst, "destination CE for d");
  c_measure->add_option("--packets", mo.throughput.packets, "packets per service for d");
  c_measure->add_option("--budget", mo.throughput.budget, "shared budget for d");
  c_measure->add_option("-o,--output", m_out, "output file, '-' for stdout");

  // dump-flows, dump-rib
  DeployFlags df;
  std::string dump_node;
  auto* c_flows = app.add_subcommand("dump-flows", "print a node's switch rules");
  add_deploy_flags(c_flows, df, true);
  c_flows->add_option("--node", dump_node)->required();
  auto* c_rib = app.add_subcommand("dump-rib", "print a node's forwarding table");
  add_deploy_flags(c_rib, df, true);
  c_rib->add_option("--node", dump_node)->required();

  // serve
  DeployFlags sf;
  api::ServerOptions so;
  auto* c_serve = app.add_subcommand("serve", "serve the controller HTTP API");
  add_deploy_flags(c_serve, sf, false);
  c_serve->add_option("--host", so.host);
  c_serve->add_option("--port", so.port);
  c_serve->add_option("--speed", so.speed, "simulated seconds per wall-clock second");
  c_serve->add_option("--ui", so.static_dir, "directory served at /");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*c_gen) {
      gen.model = topo::graph_model_from_string(gen_model);
      gen.seed = effective_seed(gen.seed);
      const auto ov = topo::overlay_from_string(gen_overlay);
      if (!ov) throw Error(Errc::InvalidArgument, "overlay must be none, vxlan or vpn");
      gen.overlay = *ov;
      if (gen_tagged) gen.coexistence = node::CoexistenceMode::tagged(*gen_tagged);
      write_json(topo::to_json(topo::generate_topology(gen)), gen_out, out);
    } else if (*c_deploy) {
      auto d = deploy_file(dep.topo, dep.seed);
      write_json(deploy_summary(*d), dep.output, out);
    } else if (*c_vadd) {
      const ctrl::VllRequest req{vll_id, ctrl::VllEndpoint::parse(vll_from),
                                 ctrl::VllEndpoint::parse(vll_to)};
      auto d = deploy_file(vf.topo, vf.seed);
      const auto v = d->push_vll(req);
      if (!vll_save.empty()) {
        auto doc = d->doc();
        doc.vlls.push_back(topo::VllDecl{v.id, v.end_a, v.end_b});
        write_json(topo::to_json(doc), vll_save, out);
      }
      write_json(ctrl::to_json(v), vf.output, out);
    } else if (*c_vdel) {
      auto d = deploy_file(vf.topo, vf.seed);
      d->delete_vll(vll_id);
      if (!vll_save.empty()) {
        auto doc = d->doc();
        std::erase_if(doc.vlls, [&](const topo::VllDecl& v) { return v.id == vll_id; });
        write_json(topo::to_json(doc), vll_save, out);
      }
      write_json(json{{"deleted", vll_id}}, vf.output, out);
    } else if (*c_vlist) {
      auto d = deploy_file(vf.topo, vf.seed);
      json list = json::array();
      for (const auto& [id, v] : d->controller().vlls()) list.push_back(ctrl::to_json(v));
      write_json(list, vf.output, out);
    } else if (*c_traffic) {
      ts.duration = from_seconds(duration_s);
      ts.vll_vid = traffic_vid;
      measure::validate(ts);
      const auto p = ip_profile(profile);
      topo::TopologyDoc doc;
      if (tf.topo.empty()) {
        doc = measure::experiment_topology(p);
      } else {
        doc = topo::load_topology_file(tf.topo);
        if (o_profile->count() > 0) {
          const auto ce = [&](const std::string& n) {
            const auto* decl = doc.find_node(n);
            return decl != nullptr && decl->role == node::NodeRole::CustomerEdge;
          };
          for (auto& l : doc.links) {
            if (ce(l.a.node) || ce(l.b.node)) continue;
            l.overlay = *topo::overlay_from_string(profile == "plain" ? "none" : profile);
          }
        }
      }
      topo::DeployOptions o;
      o.seed = effective_seed(tf.seed);
      auto d = topo::Deployment::deploy(doc, o);
      measure::check_path(*d, ts);
      std::map<std::string, double> before;
      for (const auto& n : d->doc().nodes) {
        before[n.id] = d->node(n.id).meter().units(measure::kDefaultCostModel);
      }
      const auto flow = measure::start_flow(*d, ts, o.seed);
      d->sim().run_for(ts.duration);
      json load = json::object();
      for (const auto& n : d->doc().nodes) {
        load[n.id] = (d->node(n.id).meter().units(measure::kDefaultCostModel) - before[n.id]) /
                     duration_s;
      }
      d->sim().run_for(std::chrono::milliseconds(100));
      write_json(json{{"src", ts.src},
                      {"dst", ts.dst},
                      {"rate", ts.rate},
                      {"size", ts.size},
                      {"duration_s", duration_s},
                      {"profile", profile},
                      {"sent", flow->sent()},
                      {"delivered", flow->delivered()},
                      {"load", load}},
                 tf.output, out);
    } else if (*c_measure) {
      if (experiment.size() != 1) {
        throw Error(Errc::InvalidArgument, "experiment must be a, b, c or d");
      }
      mo.udp.seed = effective_seed(mo.udp.seed);
      mo.duration = from_seconds(m_duration);
      if (experiment == "d") {
        mo.topology = topo::load_topology_file(m_topo.empty() ? bundled_topology() : m_topo);
      }
      write_json(measure::run_experiment(experiment[0], mo), m_out, out);
    } else if (*c_flows) {
      auto d = deploy_file(df.topo, df.seed);
      const auto* n = d->oshi(dump_node);
      if (n == nullptr) {
        (void)d->node(dump_node);  // UnknownNode for an undeclared id
        throw Error(Errc::InvalidArgument, dump_node + " is not an OSHI node");
      }
      write_json(flow::dump_flows(n->scs()), df.output, out);
    } else if (*c_rib) {
      auto d = deploy_file(df.topo, df.seed);
      json rib = json::array();
      for (const auto& e : d->node(dump_node).engine().fib().entries()) {
        json j{{"prefix", e.prefix.to_string()}, {"port", e.port.value()}, {"cost", e.cost}};
        if (e.next_hop.value() != 0) j["next_hop"] = e.next_hop.to_string();
        rib.push_back(std::move(j));
      }
      write_json(rib, df.output, out);
    } else if (*c_serve) {
      auto d = deploy_file(sf.topo.empty() ? bundled_topology() : sf.topo, sf.seed);
      topo::DeployOptions o;
      o.seed = effective_seed(sf.seed);
      api::Server server(std::move(d), o, so);
      const int port = server.start();
      err << "listening on http://" << so.host << ":" << port << std::endl;
      g_stop = false;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
      server.stop();
    }
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace oshi::cli
