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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oshi/net/frame.hpp"
#include "oshi/net/port.hpp"

namespace oshi::ctrl {

// In-band control channel. Every message is a JSON object carried in an
// IPv4 datagram with protocol kProtoControl between a node's management
// entity and the controller's address.
//
// Node -> controller:
//   {"type":"hello","dpid","node","role","address",
//    "ports":[{"port","kind","facing","ip_vid"?}],
//    "reserved_vids":[...],"ip_vid"?}
//   {"type":"packet_in","dpid","in_port","frame":"<hex>"}
//   {"type":"flow_mod_reply","dpid","xid","ok","errc"?,"error"?,"table"?,"id"?,"deleted"?}
//   {"type":"port_status","dpid","port","up"}
// Controller -> node:
//   {"type":"packet_out","dpid","port","frame":"<hex>"}
//   {"type":"flow_mod","dpid","xid","op":"add"|"delete","entry"?,"cookie"?,
//    "label"?}   label: the VLL id a rule belongs to

std::vector<std::uint8_t> encode_message(const nlohmann::json& msg);
/// Throws Malformed unless the bytes hold a JSON object with a "type".
nlohmann::json decode_message(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Throws Malformed on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view text);

/// Discovery probe sent out of (dpid, port).
struct Probe {
  net::Dpid dpid;
  net::PortId port;
  friend bool operator==(const Probe&, const Probe&) = default;
};

inline const net::MacAddr kProbeMac{{0x01, 0x80, 0xc2, 0x00, 0x00, 0x0e}};

net::EthernetFrame make_probe_frame(const Probe& probe);
/// Nullopt unless the frame is a well-formed probe.
std::optional<Probe> parse_probe_frame(const net::EthernetFrame& frame);

}  // namespace oshi::ctrl
