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

#include "oshi/ctrl/topology_view.hpp"

#include <algorithm>

#include "oshi/common/error.hpp"
#include "oshi/net/frame.hpp"

namespace oshi::ctrl {

void TopologyView::observe(SwitchPort from, SwitchPort to, SimTime at) {
  switches_.insert(from.dpid);
  switches_.insert(to.dpid);
  // A port faces one neighbor; a probe from a new peer replaces the old one.
  std::erase_if(seen_, [&](const auto& kv) {
    return (kv.first.second == to && kv.first.first != from) ||
           (kv.first.first == from && kv.first.second != to);
  });
  seen_[{from, to}] = at;
}

std::vector<ViewLink> TopologyView::port_down(SwitchPort port) {
  const auto before = links();
  std::erase_if(seen_, [&](const auto& kv) {
    return kv.first.first == port || kv.first.second == port;
  });
  const auto after = links();
  std::vector<ViewLink> lost;
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::back_inserter(lost));
  return lost;
}

std::vector<ViewLink> TopologyView::expire(SimTime now, SimTime timeout) {
  const auto before = links();
  std::erase_if(seen_, [&](const auto& kv) { return now - kv.second > timeout; });
  const auto after = links();
  std::vector<ViewLink> lost;
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::back_inserter(lost));
  return lost;
}

std::vector<ViewLink> TopologyView::links() const {
  std::vector<ViewLink> out;
  for (const auto& [key, at] : seen_) {
    const auto& [from, to] = key;
    if (from < to && seen_.contains({to, from})) out.push_back(ViewLink{from, to});
  }
  return out;  // sorted: map order on (from, to) with from < to
}

bool TopologyView::contains(const ViewLink& link) const {
  return seen_.contains({link.a, link.b}) && seen_.contains({link.b, link.a});
}

std::optional<std::uint16_t> TagAllocator::lowest_free(const ViewLink& link,
                                                       const std::set<std::uint16_t>& reserved,
                                                       const std::set<std::uint16_t>& exclude) const {
  const auto it = allocated_.find(link);
  for (std::uint16_t vid = 1; vid < net::kMaxVid; ++vid) {
    if (reserved.contains(vid) || exclude.contains(vid)) continue;
    if (it != allocated_.end() && it->second.contains(vid)) continue;
    return vid;
  }
  return std::nullopt;
}

void TagAllocator::allocate(const ViewLink& link, std::uint16_t vid) {
  if (net::is_reserved_vid(vid)) throw Error(Errc::ReservedVid, "vid is reserved");
  if (!allocated_[link].insert(vid).second) {
    throw Error(Errc::InvalidArgument, "vid " + std::to_string(vid) + " already allocated");
  }
}

void TagAllocator::release(const ViewLink& link, std::uint16_t vid) {
  auto it = allocated_.find(link);
  if (it == allocated_.end() || it->second.erase(vid) == 0) {
    throw Error(Errc::InvalidArgument, "vid " + std::to_string(vid) + " not allocated");
  }
  if (it->second.empty()) allocated_.erase(it);
}

bool TagAllocator::allocated(const ViewLink& link, std::uint16_t vid) const {
  const auto it = allocated_.find(link);
  return it != allocated_.end() && it->second.contains(vid);
}

}  // namespace oshi::ctrl
