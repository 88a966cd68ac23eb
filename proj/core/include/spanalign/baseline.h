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

#ifndef SPANALIGN_BASELINE_H_
#define SPANALIGN_BASELINE_H_

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/dictionary.h"

namespace spanalign {

// Bead shapes in tie-break preference order: 1-1 first, then beads that
// advance fewer source sentences, then fewer target sentences.
enum class BeadType { k11, k01, k10, k12, k21, k22 };

inline constexpr std::array<BeadType, 6> kBeadTypes = {
    BeadType::k11, BeadType::k01, BeadType::k10,
    BeadType::k12, BeadType::k21, BeadType::k22};

std::string_view BeadTypeName(BeadType type);
int BeadSourceCount(BeadType type);
int BeadTargetCount(BeadType type);

// Per-bead penalties subtracted from SIM. These defaults are not canonical;
// they only need to make 1-1 structure preferable.
struct BeadPenalties {
  double one_one = 0.0;
  double one_zero = 0.25;
  double zero_one = 0.25;
  double one_two = 0.05;
  double two_one = 0.05;
  double two_two = 0.10;

  double For(BeadType type) const;
  void Validate() const;
};

struct Bead {
  SentenceRange src;
  SentenceRange tgt;
  BeadType type = BeadType::k11;
  double sim = 0.0;
};

struct DpAlignment {
  std::vector<Bead> beads;
  double score = 0.0;  // sum of (SIM - penalty) over beads
  double avsim = 0.0;
  std::vector<double> confidences;  // AVSIM * SIM per bead
};

// SIM for a bead over sentence ranges; empty ranges never reach it.
using BeadSimilarity = std::function<double(SentenceRange src, SentenceRange tgt)>;

// Monotonic DP over an N x M grid maximizing sum(SIM - penalty).
DpAlignment DpAlignWith(int src_sentences, int tgt_sentences, const BeadSimilarity& sim,
                        const BeadPenalties& penalties);

// Dictionary baseline: SIM of a multi-sentence bead is computed on the
// concatenated tokens.
DpAlignment DpAlign(const Document& src_doc, const Document& tgt_doc,
                    const Dictionary& dict, const BeadPenalties& penalties);

// Mean SIM over beads with both sides non-empty; 0 when there are none.
double Avsim(const std::vector<Bead>& beads);

// Alignment file form: one group per bead, score = AVSIM * SIM.
Alignment ToAlignment(const DpAlignment& dp, const Document& src_doc,
                      const Document& tgt_doc);

}  // namespace spanalign

#endif  // SPANALIGN_BASELINE_H_
