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

#ifndef SPANALIGN_SCORERS_H_
#define SPANALIGN_SCORERS_H_

#include <optional>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/dictionary.h"
#include "spanalign/predict.h"

namespace spanalign {

struct LexicalScorerConfig {
  int max_span_sentences = 2;
  int top_k = 5;
  double null_score = 0.0;
};

// Built-in scorer: each query sentence against every run of up to
// `max_span_sentences` target sentences, scored by SIM. Records carry
// position-space spans and no null slot.
std::vector<PredictionRecord> ScoreLexical(const Document& query_doc,
                                           const Document& target_doc,
                                           const Dictionary& dict,
                                           const LexicalScorerConfig& config);

// Test double that reproduces a known alignment. For every query unit it
// builds start/end distributions with `sharpness` mass on the gold target
// group's first and last token (or on the null slot for unaligned units) and
// the remainder spread evenly over all other positions.
//
// Query units are the gold groups' query sides, plus one unit per query
// sentence that no group mentions, so multi-sentence groups are queried as a
// whole.
class PlantedScorer {
 public:
  // `gold` is oriented query -> target; use Transpose() for the reverse.
  PlantedScorer(Alignment gold, double sharpness);

  std::vector<PredictionRecord> Score(const Document& query_doc,
                                      const Document& target_doc,
                                      int top_k) const;

  // Distributions over `target_doc` (with null slot) aimed at `target`, or at
  // the null slot when `target` is empty.
  PositionDistributions Distributions(const Document& target_doc,
                                      std::optional<SentenceRange> target) const;

  double sharpness() const { return sharpness_; }

 private:
  Alignment gold_;
  double sharpness_;
};

}  // namespace spanalign

#endif  // SPANALIGN_SCORERS_H_
