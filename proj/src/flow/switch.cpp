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

#include "oshi/flow/switch.hpp"

#include <algorithm>
#include <string>

#include "oshi/common/error.hpp"

namespace oshi::flow {

bool FlowMatch::matches(const net::EthernetFrame& frame, PortId port) const {
  if (in_port && *in_port != port) return false;
  if (vlan) {
    if (vlan->vid) {
      if (!frame.tag || frame.tag->vid != *vlan->vid) return false;
    } else if (frame.tag) {
      return false;
    }
  }
  if (ethertype && frame.ethertype != *ethertype) return false;
  if (eth_dst && frame.dst != *eth_dst) return false;
  return true;
}

void Switch::validate(const FlowEntry& entry) const {
  if (entry.table_id >= kTableCount) {
    throw Error(Errc::InvalidArgument, "table " + std::to_string(entry.table_id) +
                                           " does not exist");
  }
  if (entry.match.in_port && !has_port(*entry.match.in_port)) {
    throw Error(Errc::UnknownPort,
                "match references unknown port " + std::to_string(entry.match.in_port->value()));
  }
  if (entry.match.vlan && entry.match.vlan->vid && *entry.match.vlan->vid > net::kMaxVid) {
    throw Error(Errc::InvalidArgument, "match vid out of range");
  }
  for (std::size_t i = 0; i < entry.actions.size(); ++i) {
    const auto& a = entry.actions[i];
    if (const auto* out = std::get_if<action::Output>(&a)) {
      if (!has_port(out->port)) {
        throw Error(Errc::UnknownPort,
                    "output to unknown port " + std::to_string(out->port.value()));
      }
    } else if (const auto* g = std::get_if<action::GotoTable>(&a)) {
      if (g->table <= entry.table_id || g->table >= kTableCount) {
        throw Error(Errc::BadGotoTable, "goto table " + std::to_string(g->table) +
                                            " from table " + std::to_string(entry.table_id));
      }
      if (i + 1 != entry.actions.size()) {
        throw Error(Errc::BadGotoTable, "goto table must be the last action");
      }
    } else if (const auto* p = std::get_if<action::PushVlan>(&a)) {
      if (p->vid > net::kMaxVid) throw Error(Errc::InvalidArgument, "push vid out of range");
    } else if (const auto* s = std::get_if<action::SetVlan>(&a)) {
      if (s->vid > net::kMaxVid) throw Error(Errc::InvalidArgument, "set vid out of range");
    }
  }
}

RuleHandle Switch::install_flow(FlowEntry entry) {
  validate(entry);
  auto& table = tables_[entry.table_id];
  for (auto& slot : table) {
    if (slot.entry.priority == entry.priority && slot.entry.match == entry.match) {
      slot.entry.actions = std::move(entry.actions);
      slot.entry.cookie = entry.cookie;
      return RuleHandle{entry.table_id, slot.seq};
    }
  }
  const std::uint64_t seq = next_seq_++;
  entry.counters = {};
  const std::uint8_t table_id = entry.table_id;
  // Insert after every entry with priority >= ours, keeping install order.
  auto pos = std::find_if(table.begin(), table.end(), [&](const Slot& s) {
    return s.entry.priority < entry.priority;
  });
  table.insert(pos, Slot{std::move(entry), seq});
  return RuleHandle{table_id, seq};
}

std::size_t Switch::delete_flows(std::uint64_t cookie) {
  std::size_t removed = 0;
  for (auto& table : tables_) {
    removed += std::erase_if(table, [&](const Slot& s) { return s.entry.cookie == cookie; });
  }
  return removed;
}

const FlowEntry* Switch::peek(std::uint8_t table, const net::EthernetFrame& frame,
                              PortId in_port) const {
  for (const auto& slot : tables_.at(table)) {
    if (slot.entry.match.matches(frame, in_port)) return &slot.entry;
  }
  return nullptr;
}

std::vector<Emission> Switch::process(net::EthernetFrame frame, PortId in_port) {
  ++counters_.packets_in;
  std::vector<Emission> out;
  std::uint8_t table_id = kTableClassify;
  bool dropped = false;

  for (;;) {
    Slot* winner = nullptr;
    for (auto& slot : tables_[table_id]) {
      if (slot.entry.match.matches(frame, in_port)) {
        winner = &slot;
        break;
      }
    }
    if (winner == nullptr) break;  // table miss

    auto& entry = winner->entry;
    ++entry.counters.packets;
    entry.counters.bytes += frame.wire_size();

    std::optional<std::uint8_t> next_table;
    const std::size_t n_actions = entry.actions.size();
    for (std::size_t i = 0; i < n_actions; ++i) {
      const auto& a = entry.actions[i];
      if (const auto* o = std::get_if<action::Output>(&a)) {
        if (i + 1 == n_actions) {
          // Nothing can follow the final action, so the frame is handed over.
          out.push_back(Emission{o->port, std::move(frame)});
          break;
        }
        out.push_back(Emission{o->port, frame});
      } else if (std::holds_alternative<action::OutputController>(a)) {
        out.push_back(Emission{std::nullopt, frame});
      } else if (const auto* p = std::get_if<action::PushVlan>(&a)) {
        if (frame.tag) {
          dropped = true;
          break;
        }
        frame.tag = net::VlanTag{p->vid, 0};
      } else if (std::holds_alternative<action::PopVlan>(a)) {
        if (!frame.tag) {
          dropped = true;
          break;
        }
        frame.tag.reset();
      } else if (const auto* s = std::get_if<action::SetVlan>(&a)) {
        if (!frame.tag) {
          dropped = true;
          break;
        }
        frame.tag->vid = s->vid;
      } else if (const auto* g = std::get_if<action::GotoTable>(&a)) {
        next_table = g->table;
      } else if (std::holds_alternative<action::Drop>(a)) {
        dropped = true;
        break;
      }
    }
    if (dropped || !next_table) break;
    table_id = *next_table;
  }

  const bool any_port =
      std::any_of(out.begin(), out.end(), [](const Emission& e) { return e.port.has_value(); });
  if (any_port) {
    ++counters_.packets_emitted;
  } else if (!out.empty()) {
    ++counters_.packets_to_controller;
  } else {
    ++counters_.packets_dropped;
  }
  return out;
}

std::vector<FlowEntry> Switch::entries() const {
  std::vector<FlowEntry> all;
  for (const auto& table : tables_) {
    for (const auto& slot : table) all.push_back(slot.entry);
  }
  return all;
}

std::size_t Switch::rule_count() const {
  std::size_t n = 0;
  for (const auto& table : tables_) n += table.size();
  return n;
}

}  // namespace oshi::flow
