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

#include "oshi/node/config.hpp"

#include "oshi/common/error.hpp"

namespace oshi::node {

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::CoreOshi: return "cr";
    case NodeRole::AccessOshi: return "pe";
    case NodeRole::PlainRouter: return "router";
    case NodeRole::CustomerEdge: return "ce";
  }
  return "?";
}

NodeRole role_from_string(std::string_view text) {
  if (text == "cr") return NodeRole::CoreOshi;
  if (text == "pe") return NodeRole::AccessOshi;
  if (text == "router") return NodeRole::PlainRouter;
  if (text == "ce") return NodeRole::CustomerEdge;
  throw Error(Errc::Schema, "unknown role '" + std::string(text) + "'");
}

std::string_view to_string(PortFacing f) {
  switch (f) {
    case PortFacing::Core: return "core";
    case PortFacing::Customer: return "customer";
    case PortFacing::Router: return "router";
  }
  return "?";
}

const PortConfig* NodeConfig::port(net::PortId p) const {
  for (const auto& pc : ports) {
    if (pc.id == p) return &pc;
  }
  return nullptr;
}

}  // namespace oshi::node
