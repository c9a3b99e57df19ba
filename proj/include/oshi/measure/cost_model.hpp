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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "oshi/common/error.hpp"

namespace oshi::measure {

/// Per-packet processing costs in units of node capacity (1 unit/s).
struct CostModel {
  double base = 0;  ///< per received packet
  double ip = 0;    ///< IP lookup and forward
  double scs = 0;   ///< one SCS pipeline traversal
  double vx = 0;    ///< VXLAN encap + decap (half charged on each side)
  double vpn = 0;   ///< userspace VPN encap + decap (half on each side)

  friend constexpr bool operator==(const CostModel&, const CostModel&) = default;
};

/// Saturation rates (packets/s) the model is fitted to.
struct CalibrationTargets {
  double router_ip_plain = 14000;
  double oshi_ip_plain = 12500;
  double oshi_ip_vxlan = 12000;
  double oshi_vll_vxlan = 13000;
  double oshi_ip_vpn = 3500;
};

/// Forwarding profile of the measured node.
enum class Profile {
  RouterIpPlain,  // plain router, no SCS
  OshiIpPlain,    // IP through the SCS twice
  OshiIpVxlan,
  OshiIpVpn,
  OshiVllPlain,   // SBP: one SCS traversal, no IP engine
  OshiVllVxlan,
  RouterIpVxlan,  // tunnels force plain IP through the tunneling switch
};

std::string_view to_string(Profile p);
Profile profile_from_string(std::string_view text);

constexpr double per_packet_cost(const CostModel& m, Profile p) {
  switch (p) {
    case Profile::RouterIpPlain: return m.base + m.ip;
    case Profile::OshiIpPlain: return m.base + m.ip + 2 * m.scs;
    case Profile::OshiIpVxlan: return m.base + m.ip + 2 * m.scs + m.vx;
    case Profile::OshiIpVpn: return m.base + m.ip + 2 * m.scs + m.vpn;
    case Profile::OshiVllPlain: return m.base + m.scs;
    case Profile::OshiVllVxlan: return m.base + m.scs + m.vx;
    case Profile::RouterIpVxlan: return m.base + m.ip + 2 * m.scs + m.vx;
  }
  return 0;
}

constexpr double saturation_rate(const CostModel& m, Profile p) {
  return 1.0 / per_packet_cost(m, p);
}

namespace detail {

constexpr double abs(double x) { return x < 0 ? -x : x; }

// Solves A x = b by Gaussian elimination with partial pivoting.
template <std::size_t N>
constexpr std::array<double, N> solve(std::array<std::array<double, N>, N> a,
                                      std::array<double, N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    }
    if (abs(a[pivot][col]) < 1e-12) throw Error(Errc::Infeasible, "singular calibration system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, N> x{};
  for (std::size_t i = 0; i < N; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace detail

/// Fits the five per-operation costs to five measured saturation rates:
///   router IP (plain)   = base + ip
///   OSHI IP (plain)     = base + ip + 2 scs
///   OSHI IP (vxlan)     = base + ip + 2 scs + vx
///   OSHI VLL (vxlan)    = base + scs + vx
///   OSHI IP (vpn)       = base + ip + 2 scs + vpn
/// Throws Infeasible when any cost comes out non-positive.
constexpr CostModel calibrate(const CalibrationTargets& t) {
  const std::array<double, 5> rates{t.router_ip_plain, t.oshi_ip_plain, t.oshi_ip_vxlan,
                                    t.oshi_vll_vxlan, t.oshi_ip_vpn};
  std::array<double, 5> rhs{};
  for (std::size_t i = 0; i < 5; ++i) {
    if (!(rates[i] > 0)) throw Error(Errc::InvalidArgument, "calibration targets must be > 0");
    rhs[i] = 1.0 / rates[i];
  }
  // Unknowns: base, ip, scs, vx, vpn.
  const std::array<std::array<double, 5>, 5> a{{
      {1, 1, 0, 0, 0},
      {1, 1, 2, 0, 0},
      {1, 1, 2, 1, 0},
      {1, 0, 1, 1, 0},
      {1, 1, 2, 0, 1},
  }};
  const auto x = detail::solve<5>(a, rhs);
  for (double v : x) {
    if (!(v > 0)) throw Error(Errc::Infeasible, "calibration yields a non-positive cost");
  }
  return CostModel{x[0], x[1], x[2], x[3], x[4]};
}

inline constexpr CostModel kDefaultCostModel = calibrate(CalibrationTargets{});

enum class CostItem : std::uint8_t { Base, Ip, Scs, VxHalf, VpnHalf };
enum class TrafficClass : std::uint8_t { Data, Control };

/// Counts charged operations per node; loads are derived from the counts so
/// totals are exact sums of per-packet costs.
class CpuMeter {
 public:
  void charge(CostItem item, TrafficClass cls) {
    ++counts_[static_cast<std::size_t>(cls)][static_cast<std::size_t>(item)];
  }

  std::uint64_t count(CostItem item, TrafficClass cls) const {
    return counts_[static_cast<std::size_t>(cls)][static_cast<std::size_t>(item)];
  }

  double units(const CostModel& m, TrafficClass cls) const {
    const auto& c = counts_[static_cast<std::size_t>(cls)];
    return static_cast<double>(c[0]) * m.base + static_cast<double>(c[1]) * m.ip +
           static_cast<double>(c[2]) * m.scs + static_cast<double>(c[3]) * (m.vx / 2) +
           static_cast<double>(c[4]) * (m.vpn / 2);
  }

  double units(const CostModel& m) const {
    return units(m, TrafficClass::Data) + units(m, TrafficClass::Control);
  }

 private:
  std::array<std::array<std::uint64_t, 5>, 2> counts_{};
};

}  // namespace oshi::measure
