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

#ifndef SPANALIGN_PREDICT_H_
#define SPANALIGN_PREDICT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanalign/corpus.h"

namespace spanalign {

// Start/end position probabilities over a target document.
//
// Positions follow the on-disk numbering: position 0 is the null slot (the
// artificial <NA> token or a [CLS]-style no-answer index) and positions 1..M
// are the target tokens. When `has_null_slot` is false the vectors hold only
// positions 1..M, i.e. element i is position i + 1.
struct PositionDistributions {
  std::vector<double> start_probs;
  std::vector<double> end_probs;
  bool has_null_slot = false;
  bool normalized = false;

  // Position number of element 0.
  int first_position() const { return has_null_slot ? 0 : 1; }
  int num_positions() const { return static_cast<int>(start_probs.size()); }

  // Entries in [0, 1]; sums within 1e-6 of one when `normalized`.
  void Validate() const;
};

// A scored candidate. Before the null rule runs, `span` is half-open over
// positions (so [0, 1) is the null slot alone); afterwards it is a token span
// or Span::Null().
struct SpanPrediction {
  Span span;
  double score = 0.0;

  friend bool operator==(const SpanPrediction&, const SpanPrediction&) = default;
};

// Span with the highest start*end product among start <= end, in O(M).
// Ties go to the smallest start, then the smallest end.
SpanPrediction BestSpan(const PositionDistributions& dists);

// The k highest-scoring legal spans in descending order with the same tie
// rule as BestSpan. Exact: a best-first merge of one stream per end position.
std::vector<SpanPrediction> TopKSpans(const PositionDistributions& dists, int k);

enum class ScoreSource { kFile, kLexical, kPlanted };

struct PredictionRecord {
  std::string qid;
  std::string query_doc_id;
  Span query_span;  // tokens of the query document
  std::string target_doc_id;
  std::vector<SpanPrediction> predictions;  // descending by score
  double null_score = 0.0;
  ScoreSource source = ScoreSource::kFile;
  // Raw records hold position-space spans; the null rule converts them to
  // token spans and sets `ruled`.
  bool has_null_slot = false;
  bool ruled = false;
  std::optional<PositionDistributions> distributions;

  // True once ruled and the best prediction is the null span.
  bool is_null() const;
  const SpanPrediction* best() const;
};

enum class NullMode {
  // The slot at position 0 stands for "no translation"; selecting it alone
  // yields a null prediction.
  kNaToken,
  // Non-null only when best score > null_score + tau.
  kScoreThreshold,
};

struct NullRule {
  NullMode mode = NullMode::kNaToken;
  double tau = 0.0;
};

// Applies `rule`, strips the null slot and returns a ruled record whose
// predictions are token spans, or a single null prediction carrying the null
// score.
PredictionRecord ApplyNullRule(const PredictionRecord& record, const NullRule& rule);

// Fills `predictions` from `distributions` (top-k) when no explicit span list
// is present, and sorts an explicit list descending.
void MaterializePredictions(PredictionRecord& record, int top_k);

}  // namespace spanalign

#endif  // SPANALIGN_PREDICT_H_
