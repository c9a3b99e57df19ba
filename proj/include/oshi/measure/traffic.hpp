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
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "oshi/common/time.hpp"
#include "oshi/net/ipv4.hpp"
#include "oshi/topo/deployment.hpp"

namespace oshi::measure {

enum class TrafficKind { UdpFlow, TcpGreedy };
std::string_view to_string(TrafficKind k);
TrafficKind traffic_kind_from_string(std::string_view text);

inline constexpr std::size_t kUdpHeaderLen = 8;
/// Smallest datagram: IPv4 + UDP headers + 8-byte sequence number.
inline constexpr std::size_t kMinDatagram = net::kIpv4HeaderLen + kUdpHeaderLen + 8;
/// Largest datagram that still fits a tagged frame in a tunnel.
inline constexpr std::size_t kMaxDatagram = 8950 - 18;

struct TrafficSpec {
  std::string src;  // CE node
  std::string dst;  // CE node
  TrafficKind kind = TrafficKind::UdpFlow;
  double rate = 1000;        // packets/s
  std::size_t size = 1000;   // IP datagram bytes
  SimTime duration = std::chrono::seconds(40);
  /// When set, the source injects frames tagged with this vid on its PE
  /// link (the customer side of a VLL) instead of routing them over IP.
  std::optional<std::uint16_t> vll_vid;
};

/// Throws InvalidArgument for a non-positive rate or duration, or a size
/// outside [kMinDatagram, kMaxDatagram].
void validate(const TrafficSpec& spec);

/// A running constant-rate flow. Inter-departure gaps are 1/rate scaled by a
/// seeded uniform factor in [1 - jitter, 1 + jitter].
class Flow {
 public:
  const TrafficSpec& spec() const { return spec_; }
  /// UDP destination port identifying the flow at the receiver.
  std::uint16_t port() const { return port_; }
  std::uint64_t sent() const { return sent_; }
  std::uint64_t delivered() const;
  bool finished() const { return finished_; }

 private:
  friend struct FlowSender;
  Flow(TrafficSpec spec, std::uint16_t port, const node::IpNode& dst)
      : spec_(std::move(spec)), port_(port), dst_(dst) {}
  friend std::shared_ptr<Flow> start_flow(topo::Deployment&, const TrafficSpec&, std::uint64_t,
                                          double);
  friend void check_path(topo::Deployment&, const TrafficSpec&, SimTime);
  TrafficSpec spec_;
  std::uint16_t port_;
  const node::IpNode& dst_;
  std::uint64_t sent_ = 0;
  bool finished_ = false;
};

/// Sends its first datagram at now() and none at or after now() + duration,
/// so a jitter-free flow sends exactly rate * duration datagrams.
/// Delivery is counted at the destination CE per flow.
std::shared_ptr<Flow> start_flow(topo::Deployment& d, const TrafficSpec& spec,
                                 std::uint64_t seed, double jitter = 0.25);

/// Sends one datagram along the spec's path and runs until it arrives or
/// `timeout` passes. Throws Unreachable when it does not arrive.
void check_path(topo::Deployment& d, const TrafficSpec& spec,
                SimTime timeout = std::chrono::seconds(2));

/// The datagram a flow sends: UDP to the destination loopback with the
/// sequence number in the first 8 payload bytes.
net::Ipv4Packet make_datagram(net::Ipv4Addr src, net::Ipv4Addr dst, std::uint16_t port,
                              std::size_t size, std::uint64_t seq);

}  // namespace oshi::measure
