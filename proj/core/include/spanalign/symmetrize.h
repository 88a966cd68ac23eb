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

#ifndef SPANALIGN_SYMMETRIZE_H_
#define SPANALIGN_SYMMETRIZE_H_

#include <string>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/predict.h"
#include "spanalign/prediction_io.h"

namespace spanalign {

enum class MissingDirectionPolicy {
  // An absent direction counts as probability 0 in the average.
  kHalf,
  // Pairs seen in one direction only are discarded.
  kSkip,
};

struct SymConfig {
  double theta = 0.4;
  MissingDirectionPolicy missing = MissingDirectionPolicy::kHalf;
};

// Best-span probability for one sentence pair, in forward (src, tgt)
// orientation.
struct DirectedSentenceScore {
  int src_sent_id = 0;
  int tgt_sent_id = 0;
  double prob = 0.0;
  Direction direction = Direction::kSrcToTgt;

  friend bool operator==(const DirectedSentenceScore&,
                         const DirectedSentenceScore&) = default;
};

// For every ruled record with a non-null best span: each query sentence
// inside the query span is paired with each answered sentence completely
// inside the best span, all sharing the best span's score. With
// kTgtToSrc the query document is the target side and pairs are emitted
// already swapped into (src, tgt) order. A pair proposed twice keeps its
// larger probability.
std::vector<DirectedSentenceScore> DirectedScores(
    const std::vector<PredictionRecord>& records, const Document& querying_doc,
    const Document& answered_doc, Direction direction);

// Averages the two directions per pair, keeps pairs whose average strictly
// exceeds theta, and merges kept pairs that share a sentence into one
// many-to-many group (score = largest pair average). Groups may be
// non-contiguous; the result satisfies AlignmentCheck::kRelaxed.
Alignment AverageAndThreshold(const std::vector<DirectedSentenceScore>& fwd,
                              const std::vector<DirectedSentenceScore>& rev,
                              const SymConfig& config, const std::string& src_doc_id,
                              const std::string& tgt_doc_id);

}  // namespace spanalign

#endif  // SPANALIGN_SYMMETRIZE_H_
