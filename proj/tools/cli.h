// Copyright 2026 The spanalign Authors
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

#ifndef SPANALIGN_TOOLS_CLI_H_
#define SPANALIGN_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace spanalign::cli {

// Exit statuses of Run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolverCap = 2;
inline constexpr int kExitIo = 3;

// Parses argv (argv[0] is the program name) and runs one subcommand.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string VersionString();

}  // namespace spanalign::cli

#endif  // SPANALIGN_TOOLS_CLI_H_
