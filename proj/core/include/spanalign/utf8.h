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

#ifndef SPANALIGN_UTF8_H_
#define SPANALIGN_UTF8_H_

#include <cstddef>
#include <string_view>

namespace spanalign::utf8 {

// Number of code points; SQuAD offsets are code-point offsets.
std::size_t Length(std::string_view text);

// Substring by code-point offset and length (clamped to the text).
std::string_view Substr(std::string_view text, std::size_t start, std::size_t count);

}  // namespace spanalign::utf8

#endif  // SPANALIGN_UTF8_H_
