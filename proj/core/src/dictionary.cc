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

#include "spanalign/dictionary.h"

#include <algorithm>
#include <istream>
#include <vector>

#include "spanalign/errors.h"
#include "spanalign/io.h"

namespace spanalign {

void Dictionary::Add(std::string source, std::string target) {
  if (entries_[std::move(source)].insert(std::move(target)).second) ++num_pairs_;
}

bool Dictionary::Translates(std::string_view source, std::string_view target) const {
  auto it = entries_.find(std::string(source));
  return it != entries_.end() && it->second.contains(std::string(target));
}

bool Dictionary::Covers(std::string_view source) const {
  return entries_.contains(std::string(source));
}

Dictionary Dictionary::Inverted() const {
  Dictionary out;
  for (const auto& [source, targets] : entries_) {
    for (const auto& target : targets) out.Add(target, source);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Dictionary::Pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(num_pairs_);
  for (const auto& [source, targets] : entries_) {
    for (const auto& target : targets) out.emplace_back(source, target);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dictionary ReadDictionary(std::istream& in, std::string_view source) {
  Dictionary dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      Fail(ErrorKind::kParse,
           Where(source, line_no) + "expected source<TAB>target");
    }
    dict.Add(line.substr(0, tab), line.substr(tab + 1));
  }
  return dict;
}

Dictionary LoadDictionary(const std::string& path) {
  auto in = OpenInput(path);
  return ReadDictionary(in, path);
}

std::string SerializeDictionary(const Dictionary& dict) {
  std::string out;
  for (const auto& [source, target] : dict.Pairs()) {
    out += source;
    out += '\t';
    out += target;
    out += '\n';
  }
  return out;
}

int GreedyMatchCount(std::span<const std::string> src,
                     std::span<const std::string> tgt, const Dictionary& dict) {
  std::vector<bool> used(tgt.size(), false);
  int matched = 0;
  for (const auto& s : src) {
    if (!dict.Covers(s)) continue;
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      if (!used[t] && dict.Translates(s, tgt[t])) {
        used[t] = true;
        ++matched;
        break;
      }
    }
  }
  return matched;
}

double LexicalScore(std::span<const std::string> src,
                    std::span<const std::string> tgt, const Dictionary& dict) {
  const std::size_t total = src.size() + tgt.size();
  if (total == 0) return 0.0;
  return 2.0 * GreedyMatchCount(src, tgt, dict) / static_cast<double>(total);
}

}  // namespace spanalign
