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

#include "oshi/ctrl/messages.hpp"

#include "oshi/common/error.hpp"

namespace oshi::ctrl {

using nlohmann::json;

std::vector<std::uint8_t> encode_message(const json& msg) {
  const std::string s = msg.dump();
  return {s.begin(), s.end()};
}

json decode_message(std::span<const std::uint8_t> bytes) {
  json j = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(Errc::Malformed, "bad control message");
  }
  return j;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view text) {
  if (text.size() % 2 != 0) throw Error(Errc::Malformed, "odd-length hex string");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const int hi = hex_value(text[i]);
    const int lo = hex_value(text[i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::Malformed, "bad hex digit");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

net::EthernetFrame make_probe_frame(const Probe& probe) {
  net::EthernetFrame f;
  f.dst = kProbeMac;
  f.src = net::MacAddr::local(probe.dpid.value());
  f.ethertype = net::kEthertypeProbe;
  const std::string body =
      json{{"dpid", probe.dpid.value()}, {"port", probe.port.value()}}.dump();
  f.payload.assign(body.begin(), body.end());
  return f;
}

std::optional<Probe> parse_probe_frame(const net::EthernetFrame& frame) {
  if (frame.ethertype != net::kEthertypeProbe || frame.tag) return std::nullopt;
  json j = json::parse(frame.payload.begin(), frame.payload.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  const auto d = j.find("dpid");
  const auto p = j.find("port");
  if (d == j.end() || p == j.end() || !d->is_number_unsigned() || !p->is_number_unsigned()) {
    return std::nullopt;
  }
  return Probe{net::Dpid(d->get<std::uint64_t>()), net::PortId(p->get<std::uint32_t>())};
}

}  // namespace oshi::ctrl
