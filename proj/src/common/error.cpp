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

#include "oshi/common/error.hpp"

namespace oshi {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Oversize: return "Oversize";
    case Errc::Truncated: return "Truncated";
    case Errc::Malformed: return "Malformed";
    case Errc::VlanState: return "VlanState";
    case Errc::BadGotoTable: return "BadGotoTable";
    case Errc::UnknownPort: return "UnknownPort";
    case Errc::ReservedVid: return "ReservedVid";
    case Errc::PortPairing: return "PortPairing";
    case Errc::NoPath: return "NoPath";
    case Errc::TagExhausted: return "TagExhausted";
    case Errc::EndpointConflict: return "EndpointConflict";
    case Errc::UnknownVll: return "UnknownVll";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownLink: return "UnknownLink";
    case Errc::VniMismatch: return "VniMismatch";
    case Errc::Schema: return "Schema";
    case Errc::Infeasible: return "Infeasible";
    case Errc::Unreachable: return "Unreachable";
    case Errc::Timeout: return "Timeout";
  }
  return "Unknown";
}

Errc errc_from_name(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(Errc::Timeout); ++i) {
    if (errc_name(static_cast<Errc>(i)) == name) return static_cast<Errc>(i);
  }
  return Errc::InvalidArgument;
}

}  // namespace oshi
