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

#ifndef SPANALIGN_IO_H_
#define SPANALIGN_IO_H_

#include <fstream>
#include <string>
#include <string_view>

namespace spanalign {

// Opens `path` for reading or throws kIo naming the path.
std::ifstream OpenInput(const std::string& path);

// Writes `content` to a sibling temp file and renames it over `path`.
void WriteFileAtomically(const std::string& path, std::string_view content);

// "<source>:<line>: " prefix used in parse and validation messages.
std::string Where(std::string_view source, std::size_t line);

}  // namespace spanalign

#endif  // SPANALIGN_IO_H_
