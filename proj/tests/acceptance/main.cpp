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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Arguments, when given, select criteria by name. Exits non-zero when any
// selected criterion fails.

#include <cstdio>
#include <exception>
#include <iostream>

#include "harness.hpp"
#include "oshi/common/error.hpp"

#ifndef OSHI_SIM_DATA_DIR
#define OSHI_SIM_DATA_DIR "data"
#endif

namespace oshi::acceptance {

std::string bundled_topology_path() { return OSHI_SIM_DATA_DIR "/topologies/example30.json"; }

topo::TopologyDoc bundled_topology() { return topo::load_topology_file(bundled_topology_path()); }

std::vector<Attachment> attachments(const topo::TopologyDoc& doc) {
  std::vector<Attachment> out;
  const auto role = [&](const std::string& id) { return doc.find_node(id)->role; };
  for (const auto& l : doc.links) {
    if (role(l.a.node) == node::NodeRole::AccessOshi &&
        role(l.b.node) == node::NodeRole::CustomerEdge) {
      out.push_back(Attachment{l.a.node, l.a.port, l.b.node, l.b.port});
    } else if (role(l.b.node) == node::NodeRole::AccessOshi &&
               role(l.a.node) == node::NodeRole::CustomerEdge) {
      out.push_back(Attachment{l.b.node, l.b.port, l.a.node, l.a.port});
    }
  }
  return out;
}

}  // namespace oshi::acceptance

int main(int argc, char** argv) {
  using namespace oshi::acceptance;
  std::vector<Criterion> all;
  for (auto group : {routing_criteria, vll_criteria, measure_criteria}) {
    for (auto& c : group()) all.push_back(std::move(c));
  }
  const std::set<std::string> selected(argv + 1, argv + argc);
  for (const auto& name : selected) {
    bool known = false;
    for (const auto& c : all) known = known || c.name == name;
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.contains(c.name)) continue;
    Outcome o;
    const Stopwatch watch;
    try {
      o = c.run();
    } catch (const oshi::Error& e) {
      o.fail(str("unexpected error ", oshi::errc_name(e.code()), ": ", e.what()));
    } catch (const std::exception& e) {
      o.fail(str("unexpected exception: ", e.what()));
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %-22s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), watch.seconds(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
