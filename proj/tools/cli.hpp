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

#include <iosfwd>
#include <string>
#include <vector>

namespace oshi::cli {

/// Runs one oshi-sim command line. JSON results go to `out` (or the file
/// named by -o); diagnostics go to `err` as a single line. Returns 0 on
/// success and 1 on any validation or runtime failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Topology shipped with the sources, used when a command needs one and
/// none was given.
std::string bundled_topology();

}  // namespace oshi::cli
