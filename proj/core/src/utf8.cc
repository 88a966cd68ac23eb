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

#include "spanalign/utf8.h"

namespace spanalign::utf8 {

namespace {

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

std::size_t ByteOffset(std::string_view text, std::size_t code_points) {
  std::size_t i = 0;
  while (i < text.size() && code_points > 0) {
    ++i;
    while (i < text.size() && IsContinuation(static_cast<unsigned char>(text[i]))) ++i;
    --code_points;
  }
  return i;
}

}  // namespace

std::size_t Length(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if (!IsContinuation(static_cast<unsigned char>(c))) ++n;
  }
  return n;
}

std::string_view Substr(std::string_view text, std::size_t start, std::size_t count) {
  const std::size_t begin = ByteOffset(text, start);
  const std::size_t end = begin + ByteOffset(text.substr(begin), count);
  return text.substr(begin, end - begin);
}

}  // namespace spanalign::utf8
