// Copyright 2026 The evkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVKIT_CLI_HPP
#define EVKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace evkit::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `evkit` command. Data goes to files or `out`, diagnostics to `err`.
/// Returns 0 on success, 1 on a usage error, 2 on a data or I/O error.
int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);
/// Same, with argv[0] supplied internally.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace evkit::cli

#endif  // EVKIT_CLI_HPP
