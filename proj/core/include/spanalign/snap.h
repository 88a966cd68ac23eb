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

#ifndef SPANALIGN_SNAP_H_
#define SPANALIGN_SNAP_H_

#include <string>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/predict.h"

namespace spanalign {

enum class BoundaryRule {
  // Each endpoint moves to its closest sentence boundary; ties widen.
  kNearest,
  // Largest sentence run lying inside the span.
  kContain,
  // Smallest sentence run covering the span.
  kCover,
};

struct SnapConfig {
  double min_score = 1e-6;
  BoundaryRule boundary_rule = BoundaryRule::kNearest;
};

// A sentence-level unit proposed by one or more span predictions.
struct SentenceUnitCandidate {
  SentenceRange src;
  SentenceRange tgt;
  std::vector<double> scores;
  double avg_score = 0.0;

  friend bool operator==(const SentenceUnitCandidate&,
                         const SentenceUnitCandidate&) = default;
};

// Snaps a token span to a non-empty contiguous sentence run. A span that
// would collapse to nothing becomes the sentence holding its midpoint token.
SentenceRange SnapSpan(const Document& doc, Span span, BoundaryRule rule);

// Drops null predictions and raw scores below `min_score`, snaps query and
// target spans, merges predictions landing on the same (src, tgt) unit and
// averages their scores. Output is sorted by descending average, then by
// (src, tgt). Records must be null-ruled and reference `query_doc` ->
// `target_doc`; the result is oriented query -> target.
std::vector<SentenceUnitCandidate> CollectCandidates(
    const std::vector<PredictionRecord>& records, const Document& query_doc,
    const Document& target_doc, const SnapConfig& config);

// Swaps src and tgt on every candidate (reverse-direction results into
// forward orientation).
std::vector<SentenceUnitCandidate> SwapSides(std::vector<SentenceUnitCandidate> candidates);

// One JSON line per candidate, tagged with the document pair.
std::string SerializeCandidates(const std::vector<SentenceUnitCandidate>& candidates,
                                const std::string& src_doc_id,
                                const std::string& tgt_doc_id);

}  // namespace spanalign

#endif  // SPANALIGN_SNAP_H_
