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

#ifndef SPANALIGN_EVAL_H_
#define SPANALIGN_EVAL_H_

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/predict.h"

namespace spanalign {

struct SpanScore {
  double f1 = 0.0;  // in [0, 1]
  bool em = false;
};

// Token-overlap F1 and exact match. Two null spans agree perfectly; one
// null against a non-null span scores zero.
SpanScore SpanF1Em(Span pred, Span gold);

struct SpanEvalItem {
  std::string qid;
  double f1 = 0.0;
  bool em = false;
};

struct SpanEvalResult {
  double f1 = 0.0;  // percent
  double em = 0.0;  // percent
  std::vector<SpanEvalItem> per_item;
};

SpanEvalResult AggregateSpanEval(std::vector<SpanEvalItem> items);

// Scores ruled records against gold alignments oriented query -> target.
// The gold span of a record is the target side of the gold group holding its
// first query sentence (null when there is none).
SpanEvalResult EvaluateSpans(const std::vector<PredictionRecord>& records,
                             const std::vector<Document>& query_docs,
                             const std::vector<Document>& target_docs,
                             const std::vector<Alignment>& gold);

struct PairEvalResult {
  double precision = 0.0;  // percent
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

double HarmonicMean(double precision, double recall);
PairEvalResult PairEvalFromCounts(std::int64_t tp, std::int64_t fp, std::int64_t fn);

// 1-to-1 links {(s, t) : s in group.src, t in group.tgt}; null groups induce
// nothing.
std::set<std::pair<int, int>> InducedLinks(const Alignment& alignment);

// Link-set precision/recall/F1 for one document pair.
PairEvalResult PairEval(const Alignment& pred, const Alignment& gold);

// Pools link counts over all document pairs. Predictions are matched to gold
// by document ids; a predicted pair with no gold counterpart is a reference
// error, a gold pair with no prediction contributes only misses.
PairEvalResult PairEvalCorpus(const std::vector<Alignment>& pred,
                              const std::vector<Alignment>& gold);

// --- reports ---------------------------------------------------------------

struct SpanReportRow {
  std::string model;
  std::string direction;
  SpanEvalResult result;
};

struct PairReportRow {
  std::string model;
  PairEvalResult result;
};

struct Report {
  std::vector<SpanReportRow> span_rows;
  std::vector<PairReportRow> pair_rows;
};

enum class ReportFormat { kText, kJson };

// Text tables in the layout "Model | Direction | F1 | EM" and
// "Model | Precision | Recall | F1"; JSON carries the same rows.
std::string RenderReport(const Report& report, ReportFormat format);

}  // namespace spanalign

#endif  // SPANALIGN_EVAL_H_
