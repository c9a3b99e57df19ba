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

#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "oshi/topo/topology.hpp"

namespace oshi::topo {

enum class GraphModel { ErdosRenyi, BarabasiAlbert, Waxman };
std::string_view to_string(GraphModel m);
/// Accepts "er"/"erdos-renyi", "ba"/"barabasi-albert", "waxman".
GraphModel graph_model_from_string(std::string_view text);

struct GeneratorParams {
  GraphModel model = GraphModel::ErdosRenyi;
  int nodes = 10;
  double p = 0.3;       // erdos-renyi edge probability
  int m = 2;            // barabasi-albert edges per new node
  double alpha = 0.4;   // waxman distance scale (fraction of the diameter)
  double beta = 0.6;    // waxman maximum edge probability
  std::uint64_t seed = 1;
  double pe_fraction = 0.3;
  Overlay overlay = Overlay::None;  // applied to OSHI-OSHI links
  node::CoexistenceMode coexistence;
  int max_attempts = 1000;
};

/// Undirected simple graph on nodes 0..n-1; edges (u, v) with u < v, sorted.
using EdgeList = std::vector<std::pair<int, int>>;

/// One draw of the model with the given seed; may be disconnected.
/// Throws InvalidArgument or Infeasible for unsatisfiable parameters.
EdgeList draw_graph(const GeneratorParams& params, std::uint64_t seed);
bool is_connected(int n, const EdgeList& edges);

/// Draws with seed, seed+1, ... until the graph is connected; marks
/// round(pe_fraction * n) nodes (at least one when the fraction is positive)
/// as PE and attaches one CE to each. Throws Infeasible after max_attempts.
TopologyDoc generate_topology(const GeneratorParams& params);

}  // namespace oshi::topo
