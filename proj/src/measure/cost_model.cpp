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

#include "oshi/measure/cost_model.hpp"

#include <string>
#include <utility>

namespace oshi::measure {

namespace {

constexpr std::pair<Profile, std::string_view> kProfileNames[] = {
    {Profile::RouterIpPlain, "router-ip"},     {Profile::OshiIpPlain, "oshi-ip"},
    {Profile::OshiIpVxlan, "oshi-ip-vxlan"},   {Profile::OshiIpVpn, "oshi-ip-vpn"},
    {Profile::OshiVllPlain, "oshi-vll"},       {Profile::OshiVllVxlan, "oshi-vll-vxlan"},
    {Profile::RouterIpVxlan, "router-ip-vxlan"},
};

}  // namespace

std::string_view to_string(Profile p) {
  for (const auto& [k, name] : kProfileNames) {
    if (k == p) return name;
  }
  return "router-ip";
}

Profile profile_from_string(std::string_view text) {
  for (const auto& [k, name] : kProfileNames) {
    if (name == text) return k;
  }
  throw Error(Errc::InvalidArgument, "unknown profile '" + std::string(text) + "'");
}

}  // namespace oshi::measure
