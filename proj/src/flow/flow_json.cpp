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

#include "oshi/flow/flow_json.hpp"

#include <string>

#include "oshi/common/error.hpp"

namespace oshi::flow {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t require_uint(const json& j, const char* key, std::uint64_t max) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw Error(Errc::Schema, std::string("expected unsigned '") + key + "'");
  }
  const auto v = j[key].get<std::uint64_t>();
  if (v > max) throw Error(Errc::Schema, std::string("'") + key + "' out of range");
  return v;
}

}  // namespace

json to_json(const FlowMatch& m) {
  json j = json::object();
  if (m.in_port) j["in_port"] = m.in_port->value();
  if (m.vlan) {
    if (m.vlan->vid) {
      j["vlan_vid"] = *m.vlan->vid;
    } else {
      j["vlan_vid"] = "none";
    }
  }
  if (m.ethertype) j["eth_type"] = *m.ethertype;
  if (m.eth_dst) j["eth_dst"] = m.eth_dst->to_string();
  return j;
}

json to_json(const FlowAction& a) {
  return std::visit(
      Overloaded{
          [](const action::Output& o) { return json{{"type", "output"}, {"port", o.port.value()}}; },
          [](const action::OutputController&) { return json{{"type", "controller"}}; },
          [](const action::PushVlan& p) { return json{{"type", "push_vlan"}, {"vid", p.vid}}; },
          [](const action::PopVlan&) { return json{{"type", "pop_vlan"}}; },
          [](const action::SetVlan& s) { return json{{"type", "set_vlan"}, {"vid", s.vid}}; },
          [](const action::GotoTable& g) { return json{{"type", "goto_table"}, {"table", g.table}}; },
          [](const action::Drop&) { return json{{"type", "drop"}}; },
      },
      a);
}

json to_json(const FlowEntry& e) {
  json actions = json::array();
  for (const auto& a : e.actions) actions.push_back(to_json(a));
  return json{{"table", e.table_id},
              {"priority", e.priority},
              {"match", to_json(e.match)},
              {"actions", std::move(actions)},
              {"cookie", e.cookie},
              {"counters", {{"packets", e.counters.packets}, {"bytes", e.counters.bytes}}}};
}

json dump_flows(const Switch& sw) {
  json out = json::array();
  for (const auto& e : sw.entries()) out.push_back(to_json(e));
  return out;
}

FlowMatch match_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::Schema, "match must be an object");
  FlowMatch m;
  for (const auto& [key, value] : j.items()) {
    if (key == "in_port") {
      m.in_port = PortId(static_cast<std::uint32_t>(require_uint(j, "in_port", UINT32_MAX)));
    } else if (key == "vlan_vid") {
      if (value.is_string() && value.get<std::string>() == "none") {
        m.vlan = VlanMatch::untagged();
      } else {
        m.vlan = VlanMatch::exact(
            static_cast<std::uint16_t>(require_uint(j, "vlan_vid", net::kMaxVid)));
      }
    } else if (key == "eth_type") {
      m.ethertype = static_cast<std::uint16_t>(require_uint(j, "eth_type", 0xffff));
    } else if (key == "eth_dst") {
      if (!value.is_string()) throw Error(Errc::Schema, "eth_dst must be a string");
      m.eth_dst = net::MacAddr::parse(value.get<std::string>());
    } else {
      throw Error(Errc::Schema, "unknown match field '" + key + "'");
    }
  }
  return m;
}

FlowAction action_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(Errc::Schema, "action needs a string 'type'");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "output") {
    return action::Output{PortId(static_cast<std::uint32_t>(require_uint(j, "port", UINT32_MAX)))};
  }
  if (type == "controller") return action::OutputController{};
  if (type == "push_vlan") {
    return action::PushVlan{static_cast<std::uint16_t>(require_uint(j, "vid", net::kMaxVid))};
  }
  if (type == "pop_vlan") return action::PopVlan{};
  if (type == "set_vlan") {
    return action::SetVlan{static_cast<std::uint16_t>(require_uint(j, "vid", net::kMaxVid))};
  }
  if (type == "goto_table") {
    return action::GotoTable{static_cast<std::uint8_t>(require_uint(j, "table", 255))};
  }
  if (type == "drop") return action::Drop{};
  throw Error(Errc::Schema, "unknown action type '" + type + "'");
}

FlowEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::Schema, "flow entry must be an object");
  FlowEntry e;
  e.table_id = static_cast<std::uint8_t>(require_uint(j, "table", 255));
  e.priority = static_cast<std::uint16_t>(require_uint(j, "priority", 0xffff));
  e.match = match_from_json(j.value("match", json::object()));
  if (j.contains("actions")) {
    if (!j["actions"].is_array()) throw Error(Errc::Schema, "actions must be an array");
    for (const auto& a : j["actions"]) e.actions.push_back(action_from_json(a));
  }
  if (j.contains("cookie")) e.cookie = require_uint(j, "cookie", UINT64_MAX);
  return e;
}

}  // namespace oshi::flow
