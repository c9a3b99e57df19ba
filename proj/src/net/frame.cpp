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

#include "oshi/net/frame.hpp"

#include <algorithm>
#include <string>

#include "oshi/common/error.hpp"

namespace oshi::net {

namespace {

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
}

MacAddr get_mac(std::span<const std::uint8_t> b, std::size_t off) {
  std::array<std::uint8_t, 6> o{};
  std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(off), 6, o.begin());
  return MacAddr(o);
}

}  // namespace

VlanTag VlanTag::make(unsigned vid, unsigned pcp) {
  if (vid > kMaxVid) {
    throw Error(Errc::InvalidArgument, "vid " + std::to_string(vid) + " out of range");
  }
  if (pcp > 7) {
    throw Error(Errc::InvalidArgument, "pcp " + std::to_string(pcp) + " out of range");
  }
  return VlanTag{static_cast<std::uint16_t>(vid), static_cast<std::uint8_t>(pcp)};
}

void encode_frame_into(const EthernetFrame& frame, std::vector<std::uint8_t>& out) {
  if (frame.payload.size() > kMaxPayload) {
    throw Error(Errc::Oversize, "payload of " + std::to_string(frame.payload.size()) +
                                    " bytes exceeds " + std::to_string(kMaxPayload));
  }
  out.reserve(out.size() + frame.wire_size());
  out.insert(out.end(), frame.dst.octets().begin(), frame.dst.octets().end());
  out.insert(out.end(), frame.src.octets().begin(), frame.src.octets().end());
  if (frame.tag) {
    put16(out, kEthertypeVlan);
    put16(out, static_cast<std::uint16_t>((frame.tag->pcp << 13) | (frame.tag->vid & 0x0fff)));
  }
  put16(out, frame.ethertype);
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
}

std::vector<std::uint8_t> encode_frame(const EthernetFrame& frame) {
  std::vector<std::uint8_t> out;
  encode_frame_into(frame, out);
  return out;
}

EthernetFrame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kEthernetHeaderLen) {
    throw Error(Errc::Truncated,
                "frame of " + std::to_string(bytes.size()) + " bytes is truncated");
  }
  EthernetFrame f;
  f.dst = get_mac(bytes, 0);
  f.src = get_mac(bytes, 6);
  std::size_t off = 12;
  if (get16(bytes, 12) == kEthertypeVlan) {
    if (bytes.size() < kEthernetHeaderLen + kVlanTagLen) {
      throw Error(Errc::Truncated, "tagged header on " + std::to_string(bytes.size()) +
                                       "-byte input");
    }
    const std::uint16_t tci = get16(bytes, 14);
    f.tag = VlanTag{static_cast<std::uint16_t>(tci & 0x0fff),
                    static_cast<std::uint8_t>(tci >> 13)};
    off = 16;
  }
  f.ethertype = get16(bytes, off);
  off += 2;
  if (bytes.size() - off > kMaxPayload) {
    throw Error(Errc::Oversize, "payload exceeds " + std::to_string(kMaxPayload));
  }
  f.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(off), bytes.end());
  return f;
}

EthernetFrame vlan_push(EthernetFrame frame, VlanTag tag) {
  if (frame.tag) throw Error(Errc::VlanState, "push on a tagged frame");
  frame.tag = VlanTag::make(tag.vid, tag.pcp);
  return frame;
}

EthernetFrame vlan_pop(EthernetFrame frame) {
  if (!frame.tag) throw Error(Errc::VlanState, "pop on an untagged frame");
  frame.tag.reset();
  return frame;
}

EthernetFrame vlan_set(EthernetFrame frame, std::uint16_t vid) {
  if (!frame.tag) throw Error(Errc::VlanState, "set on an untagged frame");
  frame.tag->vid = VlanTag::make(vid).vid;
  return frame;
}

}  // namespace oshi::net
