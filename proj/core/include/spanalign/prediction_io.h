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

#ifndef SPANALIGN_PREDICTION_IO_H_
#define SPANALIGN_PREDICTION_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spanalign/predict.h"

namespace spanalign {

enum class Direction { kSrcToTgt, kTgtToSrc };

std::string_view DirectionName(Direction direction);
Direction ParseDirection(std::string_view text);

// First line of a prediction file.
struct PredictionFileHeader {
  Direction direction = Direction::kSrcToTgt;
  std::string producer;
  // Scores and probabilities are natural logs; the loader exponentiates.
  bool log_space = false;
  // Position 0 of every record is the null slot.
  bool null_slot = false;
  // Position vectors are declared softmax-normalized.
  bool normalized = false;
};

struct PredictionFile {
  PredictionFileHeader header;
  std::vector<PredictionRecord> records;
};

// Line-delimited JSON: a header object, then one record per query:
//   {qid, query_doc_id, query_span: [i, j], target_doc_id, null_score,
//    spans: [{span: [k, l], score}], start_probs?, end_probs?, log_space?}
// Spans are 1-based inclusive positions with [0, 0] the null slot. When a
// record carries both a span list and position vectors the list wins;
// vectors alone are expanded to the `top_k` best spans.
PredictionFile ReadPredictions(std::istream& in, std::string_view source, int top_k);
PredictionFile LoadPredictions(const std::string& path, int top_k);

// Writes raw (unruled) records. Position vectors are included when
// `with_distributions` is set and the record has them.
std::string SerializePredictions(const PredictionFile& file, bool with_distributions);

}  // namespace spanalign

#endif  // SPANALIGN_PREDICTION_IO_H_
