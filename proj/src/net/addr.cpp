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

#include "oshi/net/addr.hpp"

#include <charconv>
#include <cstdio>

#include "oshi/common/error.hpp"

namespace oshi::net {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

MacAddr MacAddr::local(std::uint64_t id) {
  std::array<std::uint8_t, 6> o{};
  o[0] = 0x02;  // locally administered, unicast
  for (int i = 5; i >= 1; --i) {
    o[i] = static_cast<std::uint8_t>(id & 0xff);
    id >>= 8;
  }
  return MacAddr(o);
}

MacAddr MacAddr::parse(std::string_view text) {
  if (text.size() != 17) {
    throw Error(Errc::InvalidArgument, "bad MAC address '" + std::string(text) + "'");
  }
  std::array<std::uint8_t, 6> o{};
  for (int i = 0; i < 6; ++i) {
    const int hi = hex_digit(text[i * 3]);
    const int lo = hex_digit(text[i * 3 + 1]);
    if (hi < 0 || lo < 0 || (i < 5 && text[i * 3 + 2] != ':')) {
      throw Error(Errc::InvalidArgument, "bad MAC address '" + std::string(text) + "'");
    }
    o[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return MacAddr(o);
}

std::string MacAddr::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", octets_[0],
                octets_[1], octets_[2], octets_[3], octets_[4], octets_[5]);
  return buf;
}

Ipv4Addr Ipv4Addr::parse(std::string_view text) {
  std::uint32_t value = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 4; ++i) {
    unsigned octet = 0;
    auto [next, ec] = std::from_chars(p, end, octet);
    if (ec != std::errc() || next == p || octet > 255) {
      throw Error(Errc::InvalidArgument, "bad IPv4 address '" + std::string(text) + "'");
    }
    value = (value << 8) | octet;
    p = next;
    if (i < 3) {
      if (p == end || *p != '.') {
        throw Error(Errc::InvalidArgument, "bad IPv4 address '" + std::string(text) + "'");
      }
      ++p;
    }
  }
  if (p != end) {
    throw Error(Errc::InvalidArgument, "bad IPv4 address '" + std::string(text) + "'");
  }
  return Ipv4Addr(value);
}

std::string Ipv4Addr::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", value_ >> 24, (value_ >> 16) & 0xff,
                (value_ >> 8) & 0xff, value_ & 0xff);
  return buf;
}

Ipv4Prefix::Ipv4Prefix(Ipv4Addr addr, int length)
    : network_(addr.value() & mask_for(length)), length_(length) {
  if (length < 0 || length > 32) {
    throw Error(Errc::InvalidArgument, "bad prefix length " + std::to_string(length));
  }
}

Ipv4Prefix Ipv4Prefix::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Ipv4Prefix(Ipv4Addr::parse(text), 32);
  }
  int len = -1;
  auto tail = text.substr(slash + 1);
  auto [next, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), len);
  if (ec != std::errc() || next != tail.data() + tail.size()) {
    throw Error(Errc::InvalidArgument, "bad prefix '" + std::string(text) + "'");
  }
  return Ipv4Prefix(Ipv4Addr::parse(text.substr(0, slash)), len);
}

std::string Ipv4Prefix::to_string() const {
  return network_.to_string() + "/" + std::to_string(length_);
}

}  // namespace oshi::net
