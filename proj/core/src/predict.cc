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

#include "spanalign/predict.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "spanalign/errors.h"

namespace spanalign {

void PositionDistributions::Validate() const {
  if (start_probs.size() != end_probs.size()) {
    Fail(ErrorKind::kValidation, "start/end probability vectors differ in length");
  }
  for (const auto* vec : {&start_probs, &end_probs}) {
    for (double p : *vec) {
      if (!(p >= 0.0 && p <= 1.0)) {
        Fail(ErrorKind::kValidation, "position probability outside [0, 1]");
      }
    }
    if (normalized) {
      const double sum = std::accumulate(vec->begin(), vec->end(), 0.0);
      if (std::abs(sum - 1.0) > 1e-6) {
        Fail(ErrorKind::kValidation, "declared-normalized vector sums to " +
                                         std::to_string(sum));
      }
    }
  }
}

namespace {

void CheckScanInput(const PositionDistributions& dists) {
  const auto& p1 = dists.start_probs;
  const auto& p2 = dists.end_probs;
  if (p1.empty() || p2.empty()) {
    Fail(ErrorKind::kValidation, "empty position distribution");
  }
  if (p1.size() != p2.size()) {
    Fail(ErrorKind::kValidation, "start/end probability vectors differ in length");
  }
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (std::isnan(p1[i]) || std::isnan(p2[i])) {
      Fail(ErrorKind::kValidation, "NaN in position distribution");
    }
    if (p1[i] < 0.0 || p2[i] < 0.0) {
      Fail(ErrorKind::kValidation, "negative position probability");
    }
  }
}

SpanPrediction MakePrediction(const PositionDistributions& dists, int k, int l,
                              double score) {
  const int offset = dists.first_position();
  return SpanPrediction{Span{k + offset, l + 1 + offset}, score};
}

}  // namespace

SpanPrediction BestSpan(const PositionDistributions& dists) {
  CheckScanInput(dists);
  const auto& p1 = dists.start_probs;
  const auto& p2 = dists.end_probs;
  const int m = static_cast<int>(p1.size());

  int prefix_argmax = 0;
  double prefix_max = p1[0];
  int best_k = -1;
  int best_l = -1;
  double best_score = -1.0;
  for (int l = 0; l < m; ++l) {
    if (p1[l] > prefix_max) {
      prefix_max = p1[l];
      prefix_argmax = l;
    }
    // With a zero end probability every start scores 0; the smallest wins.
    const int k = p2[l] == 0.0 ? 0 : prefix_argmax;
    const double score = p2[l] == 0.0 ? 0.0 : prefix_max * p2[l];
    if (score > best_score || (score == best_score && k < best_k)) {
      best_score = score;
      best_k = k;
      best_l = l;
    }
  }
  return MakePrediction(dists, best_k, best_l, best_score);
}

std::vector<SpanPrediction> TopKSpans(const PositionDistributions& dists, int k) {
  if (k < 1) Fail(ErrorKind::kValidation, "top-k requires k >= 1");
  CheckScanInput(dists);
  const auto& p1 = dists.start_probs;
  const auto& p2 = dists.end_probs;
  const int m = static_cast<int>(p1.size());
  const long long legal = static_cast<long long>(m) * (m + 1) / 2;
  const int wanted = static_cast<int>(std::min<long long>(k, legal));

  // Starts ordered by probability, then index: every end-position stream
  // walks this order restricted to starts <= end.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p1[a] > p1[b]; });
  std::vector<int> rank(m);
  for (int i = 0; i < m; ++i) rank[order[i]] = i;

  struct Entry {
    double score;
    int start;
    int end;
    int cursor;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.start != b.start) return a.start > b.start;
    return a.end > b.end;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  int prefix_argmax = 0;
  for (int l = 0; l < m; ++l) {
    if (p1[l] > p1[prefix_argmax]) prefix_argmax = l;
    if (p2[l] == 0.0) {
      heap.push(Entry{0.0, 0, l, 0});
    } else {
      heap.push(Entry{p1[prefix_argmax] * p2[l], prefix_argmax, l, rank[prefix_argmax]});
    }
  }

  std::vector<SpanPrediction> out;
  out.reserve(wanted);
  while (static_cast<int>(out.size()) < wanted && !heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    out.push_back(MakePrediction(dists, top.start, top.end, top.score));
    const int l = top.end;
    if (p2[l] == 0.0) {
      if (top.start + 1 <= l) heap.push(Entry{0.0, top.start + 1, l, 0});
      continue;
    }
    int cursor = top.cursor + 1;
    while (cursor < m && order[cursor] > l) ++cursor;
    if (cursor < m) {
      heap.push(Entry{p1[order[cursor]] * p2[l], order[cursor], l, cursor});
    }
  }
  return out;
}

bool PredictionRecord::is_null() const {
  return ruled && (predictions.empty() || predictions.front().span.is_null());
}

const SpanPrediction* PredictionRecord::best() const {
  if (predictions.empty() || predictions.front().span.is_null()) return nullptr;
  return &predictions.front();
}

namespace {

void SortPredictions(std::vector<SpanPrediction>& predictions) {
  std::stable_sort(predictions.begin(), predictions.end(),
                   [](const SpanPrediction& a, const SpanPrediction& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.span < b.span;
                   });
}

PredictionRecord MakeNull(PredictionRecord out, double null_score) {
  out.null_score = null_score;
  out.predictions = {SpanPrediction{Span::Null(), null_score}};
  return out;
}

}  // namespace

PredictionRecord ApplyNullRule(const PredictionRecord& record, const NullRule& rule) {
  if (!std::isfinite(rule.tau)) Fail(ErrorKind::kConfiguration, "tau must be finite");
  if (record.ruled) return record;
  if (rule.mode == NullMode::kNaToken && !record.has_null_slot) {
    Fail(ErrorKind::kConfiguration,
         "record '" + record.qid + "': <NA> rule needs a position-0 slot");
  }

  std::vector<SpanPrediction> raw = record.predictions;
  SortPredictions(raw);

  PredictionRecord out = record;
  out.ruled = true;
  out.has_null_slot = false;
  out.predictions.clear();

  if (rule.mode == NullMode::kNaToken && !raw.empty() &&
      raw.front().span == Span{0, 1}) {
    return MakeNull(std::move(out), raw.front().score);
  }

  // Position p >= 1 is token p - 1.
  for (const auto& pred : raw) {
    if (pred.span.is_null()) continue;
    Span pos = pred.span;
    if (pos.start == 0) {
      if (!record.has_null_slot) {
        Fail(ErrorKind::kContract,
             "record '" + record.qid + "': position 0 used without a null slot");
      }
      if (rule.mode == NullMode::kScoreThreshold || pos.end <= 1) continue;
      pos.start = 1;
    }
    out.predictions.push_back(SpanPrediction{Span{pos.start - 1, pos.end - 1}, pred.score});
  }

  if (rule.mode == NullMode::kScoreThreshold) {
    const double best = out.predictions.empty()
                            ? -std::numeric_limits<double>::infinity()
                            : out.predictions.front().score;
    if (!(best > record.null_score + rule.tau)) {
      return MakeNull(std::move(out), record.null_score);
    }
  } else if (out.predictions.empty()) {
    return MakeNull(std::move(out), record.null_score);
  }
  return out;
}

void MaterializePredictions(PredictionRecord& record, int top_k) {
  if (record.predictions.empty() && record.distributions) {
    record.predictions = TopKSpans(*record.distributions, top_k);
    return;
  }
  SortPredictions(record.predictions);
  if (top_k > 0 && static_cast<int>(record.predictions.size()) > top_k) {
    record.predictions.resize(top_k);
  }
}

}  // namespace spanalign
