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

#ifndef SPANALIGN_FIXTURE_H_
#define SPANALIGN_FIXTURE_H_

#include <cstdint>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/dictionary.h"

namespace spanalign {

struct FixtureConfig {
  int num_docs = 30;
  int min_groups = 4;
  int max_groups = 9;
  // Unaligned sentences per side, as a fraction of the document's groups
  // (at least one per side when positive).
  double null_ratio = 0.2;
  // Probability that an aligned group spans two sentences on a side.
  double multi_sentence_rate = 0.25;
  // Permute target-side group order (non-monotonic alignment).
  bool shuffle_target = true;
  int min_tokens = 3;
  int max_tokens = 8;
  std::uint64_t seed = 1;
};

// A synthetic bilingual corpus with a known many-to-many gold alignment. The
// target side uses no-space joining; every aligned source word has exactly
// one dictionary translation present in its target group, and unaligned
// sentences use words the dictionary does not cover.
struct BitextFixture {
  std::vector<Document> src_docs;
  std::vector<Document> tgt_docs;
  std::vector<Alignment> gold;
  Dictionary dictionary;
};

BitextFixture GenerateFixture(const FixtureConfig& config);

}  // namespace spanalign

#endif  // SPANALIGN_FIXTURE_H_
