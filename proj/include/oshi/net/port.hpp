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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "oshi/common/time.hpp"

namespace oshi::net {

/// Port number, unique within one node.
class PortId {
 public:
  constexpr PortId() = default;
  constexpr explicit PortId(std::uint32_t value) : value_(value) {}
  constexpr std::uint32_t value() const { return value_; }
  friend constexpr auto operator<=>(PortId, PortId) = default;

 private:
  std::uint32_t value_ = 0;
};

/// OpenFlow datapath id of an SDN capable switch.
class Dpid {
 public:
  constexpr Dpid() = default;
  constexpr explicit Dpid(std::uint64_t value) : value_(value) {}
  constexpr std::uint64_t value() const { return value_; }
  friend constexpr auto operator<=>(Dpid, Dpid) = default;

 private:
  std::uint64_t value_ = 0;
};

enum class PortKind { Physical, Virtual, Tunnel };

std::string_view to_string(PortKind kind);
PortKind port_kind_from_string(std::string_view text);

/// Virtual ports pair 1:1 with physical/tunnel ports at a fixed offset.
inline constexpr std::uint32_t kVirtualPortBase = 1000;

constexpr PortId virtual_port_of(PortId physical) {
  return PortId(physical.value() + kVirtualPortBase);
}
constexpr PortId physical_port_of(PortId virt) {
  return PortId(virt.value() - kVirtualPortBase);
}
constexpr bool is_virtual_port_id(PortId p) { return p.value() > kVirtualPortBase; }

struct PortDesc {
  PortId id;
  PortKind kind = PortKind::Physical;
  std::optional<PortId> paired;
};

/// Checks the 1:1 pairing between virtual and physical/tunnel ports.
/// Throws PortPairing on a violation.
void check_port_pairing(std::span<const PortDesc> ports);

struct LinkEnd {
  std::string node;
  PortId port;
  friend auto operator<=>(const LinkEnd&, const LinkEnd&) = default;
};

struct LinkSpec {
  LinkEnd a;
  LinkEnd b;
  std::uint32_t cost = 1;
  SimTime delay = std::chrono::milliseconds(1);
  std::optional<double> capacity_pps;

  /// Throws InvalidArgument when the endpoints coincide or cost is zero.
  void validate() const;
};

}  // namespace oshi::net

template <>
struct std::hash<oshi::net::PortId> {
  std::size_t operator()(oshi::net::PortId p) const noexcept {
    return std::hash<std::uint32_t>{}(p.value());
  }
};

template <>
struct std::hash<oshi::net::Dpid> {
  std::size_t operator()(oshi::net::Dpid d) const noexcept {
    return std::hash<std::uint64_t>{}(d.value());
  }
};
