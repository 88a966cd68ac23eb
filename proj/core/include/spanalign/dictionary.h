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

#ifndef SPANALIGN_DICTIONARY_H_
#define SPANALIGN_DICTIONARY_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace spanalign {

// Bilingual word list: source term -> set of target terms.
class Dictionary {
 public:
  void Add(std::string source, std::string target);
  bool Translates(std::string_view source, std::string_view target) const;
  bool Covers(std::string_view source) const;
  std::size_t size() const { return num_pairs_; }

  // Same pairs with the direction swapped.
  Dictionary Inverted() const;

  // All (source, target) pairs in lexicographic order.
  std::vector<std::pair<std::string, std::string>> Pairs() const;

 private:
  std::unordered_map<std::string, std::unordered_set<std::string>> entries_;
  std::size_t num_pairs_ = 0;
};

// Tab-separated `source<TAB>target` lines; blank lines and lines starting
// with '#' are skipped.
Dictionary ReadDictionary(std::istream& in, std::string_view source);
Dictionary LoadDictionary(const std::string& path);

// TSV form accepted by ReadDictionary.
std::string SerializeDictionary(const Dictionary& dict);

// SIM: 2 * matched / (|src| + |tgt|). Source tokens are matched greedily left
// to right, each against the leftmost unconsumed target token it translates
// to; a target token is consumed at most once.
double LexicalScore(std::span<const std::string> src,
                    std::span<const std::string> tgt, const Dictionary& dict);

// Number of one-to-one pairs found by the same greedy pass.
int GreedyMatchCount(std::span<const std::string> src,
                     std::span<const std::string> tgt, const Dictionary& dict);

}  // namespace spanalign

#endif  // SPANALIGN_DICTIONARY_H_
