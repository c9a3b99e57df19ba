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
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace oshi::net {

/// 48-bit Ethernet address. Text form is "aa:bb:cc:dd:ee:ff".
class MacAddr {
 public:
  constexpr MacAddr() = default;
  constexpr explicit MacAddr(std::array<std::uint8_t, 6> octets) : octets_(octets) {}

  static constexpr MacAddr broadcast() {
    return MacAddr({0xff, 0xff, 0xff, 0xff, 0xff, 0xff});
  }
  /// Locally administered unicast address derived from a 40-bit id.
  static MacAddr local(std::uint64_t id);
  static MacAddr parse(std::string_view text);

  const std::array<std::uint8_t, 6>& octets() const { return octets_; }
  bool is_broadcast() const { return *this == broadcast(); }
  bool is_locally_administered() const { return (octets_[0] & 0x02) != 0; }
  bool is_multicast() const { return (octets_[0] & 0x01) != 0; }
  std::string to_string() const;

  friend constexpr auto operator<=>(const MacAddr&, const MacAddr&) = default;

 private:
  std::array<std::uint8_t, 6> octets_{};
};

class Ipv4Addr {
 public:
  constexpr Ipv4Addr() = default;
  constexpr explicit Ipv4Addr(std::uint32_t value) : value_(value) {}
  constexpr Ipv4Addr(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
      : value_((std::uint32_t{a} << 24) | (std::uint32_t{b} << 16) |
               (std::uint32_t{c} << 8) | std::uint32_t{d}) {}

  static Ipv4Addr parse(std::string_view text);

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_unspecified() const { return value_ == 0; }
  constexpr bool is_multicast() const { return (value_ >> 28) == 0xe; }
  std::string to_string() const;

  friend constexpr auto operator<=>(const Ipv4Addr&, const Ipv4Addr&) = default;

 private:
  std::uint32_t value_ = 0;
};

/// Network prefix; the stored address is always masked to the length.
class Ipv4Prefix {
 public:
  constexpr Ipv4Prefix() = default;
  Ipv4Prefix(Ipv4Addr addr, int length);

  static Ipv4Prefix parse(std::string_view text);

  Ipv4Addr network() const { return network_; }
  int length() const { return length_; }
  std::uint32_t mask() const { return mask_for(length_); }
  bool contains(Ipv4Addr addr) const {
    return (addr.value() & mask()) == network_.value();
  }
  /// n-th address inside the prefix (n = 0 is the network address).
  Ipv4Addr host(std::uint32_t n) const { return Ipv4Addr(network_.value() + n); }
  std::string to_string() const;

  static constexpr std::uint32_t mask_for(int length) {
    return length == 0 ? 0u : ~std::uint32_t{0} << (32 - length);
  }

  friend auto operator<=>(const Ipv4Prefix&, const Ipv4Prefix&) = default;

 private:
  Ipv4Addr network_;
  int length_ = 0;
};

}  // namespace oshi::net

template <>
struct std::hash<oshi::net::Ipv4Addr> {
  std::size_t operator()(const oshi::net::Ipv4Addr& a) const noexcept {
    return std::hash<std::uint32_t>{}(a.value());
  }
};
