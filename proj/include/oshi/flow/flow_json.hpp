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

#include <nlohmann/json.hpp>

#include "oshi/flow/switch.hpp"

namespace oshi::flow {

// Rule dump format, shared by `dump-flows` and the controller API:
//   {"table":0,"priority":100,
//    "match":{"in_port":1,"vlan_vid":"none"|55,"eth_type":2048,"eth_dst":"..."},
//    "actions":[{"type":"output","port":2},{"type":"set_vlan","vid":71},...],
//    "cookie":7,"counters":{"packets":0,"bytes":0}}

nlohmann::json to_json(const FlowMatch& match);
nlohmann::json to_json(const FlowAction& action);
nlohmann::json to_json(const FlowEntry& entry);
nlohmann::json dump_flows(const Switch& sw);

/// Throws Schema on malformed input. Counters are ignored when present.
FlowMatch match_from_json(const nlohmann::json& j);
FlowAction action_from_json(const nlohmann::json& j);
FlowEntry entry_from_json(const nlohmann::json& j);

}  // namespace oshi::flow
