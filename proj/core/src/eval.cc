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

#include "spanalign/eval.h"

#include <algorithm>
#include <map>

#include "spanalign/errors.h"

namespace spanalign {

SpanScore SpanF1Em(Span pred, Span gold) {
  if (pred.is_null() && gold.is_null()) return {1.0, true};
  if (pred.is_null() || gold.is_null()) return {0.0, false};
  const int overlap =
      std::max(0, std::min(pred.end, gold.end) - std::max(pred.start, gold.start));
  const double f1 = 2.0 * overlap / static_cast<double>(pred.length() + gold.length());
  return {f1, pred == gold};
}

SpanEvalResult AggregateSpanEval(std::vector<SpanEvalItem> items) {
  SpanEvalResult result;
  if (!items.empty()) {
    double f1 = 0.0;
    int em = 0;
    for (const auto& item : items) {
      f1 += item.f1;
      em += item.em ? 1 : 0;
    }
    result.f1 = 100.0 * f1 / static_cast<double>(items.size());
    result.em = 100.0 * em / static_cast<double>(items.size());
  }
  result.per_item = std::move(items);
  return result;
}

SpanEvalResult EvaluateSpans(const std::vector<PredictionRecord>& records,
                             const std::vector<Document>& query_docs,
                             const std::vector<Document>& target_docs,
                             const std::vector<Alignment>& gold) {
  std::map<std::pair<std::string, std::string>, const Alignment*> gold_by_pair;
  for (const auto& a : gold) gold_by_pair[{a.src_doc_id, a.tgt_doc_id}] = &a;

  std::vector<SpanEvalItem> items;
  for (const auto& record : records) {
    if (!record.ruled) {
      Fail(ErrorKind::kContract, "record '" + record.qid + "' has not been null-ruled");
    }
    const Document* query_doc = FindDocument(query_docs, record.query_doc_id);
    const Document* target_doc = FindDocument(target_docs, record.target_doc_id);
    auto it = gold_by_pair.find({record.query_doc_id, record.target_doc_id});
    if (!query_doc || !target_doc || it == gold_by_pair.end()) {
      Fail(ErrorKind::kReference, "record '" + record.qid + "' has no gold document pair");
    }
    const auto queried = SpanToSentenceCover(*query_doc, record.query_span);
    Span gold_span = Span::Null();
    if (!queried.empty()) {
      for (const auto& group : it->second->links) {
        if (std::find(group.src.begin(), group.src.end(), queried.front()) == group.src.end()) {
          continue;
        }
        if (!group.tgt.empty()) {
          gold_span = target_doc->TokenSpan(SentenceRange{group.tgt.front(), group.tgt.back() + 1});
        }
        break;
      }
    }
    const SpanPrediction* top = record.best();
    const SpanScore score = SpanF1Em(top ? top->span : Span::Null(), gold_span);
    items.push_back(SpanEvalItem{record.qid, score.f1, score.em});
  }
  return AggregateSpanEval(std::move(items));
}

double HarmonicMean(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

PairEvalResult PairEvalFromCounts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  PairEvalResult r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = tp + fp == 0 ? 0.0 : 100.0 * tp / static_cast<double>(tp + fp);
  r.recall = tp + fn == 0 ? 0.0 : 100.0 * tp / static_cast<double>(tp + fn);
  r.f1 = HarmonicMean(r.precision, r.recall);
  return r;
}

std::set<std::pair<int, int>> InducedLinks(const Alignment& alignment) {
  std::set<std::pair<int, int>> links;
  for (const auto& group : alignment.links) {
    for (int s : group.src) {
      for (int t : group.tgt) links.emplace(s, t);
    }
  }
  return links;
}

namespace {

void Count(const Alignment& pred, const Alignment& gold, std::int64_t& tp,
           std::int64_t& fp, std::int64_t& fn) {
  const auto p = InducedLinks(pred);
  const auto g = InducedLinks(gold);
  std::int64_t hits = 0;
  for (const auto& link : p) hits += g.contains(link) ? 1 : 0;
  tp += hits;
  fp += static_cast<std::int64_t>(p.size()) - hits;
  fn += static_cast<std::int64_t>(g.size()) - hits;
}

}  // namespace

PairEvalResult PairEval(const Alignment& pred, const Alignment& gold) {
  if (pred.src_doc_id != gold.src_doc_id || pred.tgt_doc_id != gold.tgt_doc_id) {
    Fail(ErrorKind::kReference, "prediction " + pred.src_doc_id + " -> " + pred.tgt_doc_id +
                                    " evaluated against gold " + gold.src_doc_id + " -> " +
                                    gold.tgt_doc_id);
  }
  std::int64_t tp = 0, fp = 0, fn = 0;
  Count(pred, gold, tp, fp, fn);
  return PairEvalFromCounts(tp, fp, fn);
}

PairEvalResult PairEvalCorpus(const std::vector<Alignment>& pred,
                              const std::vector<Alignment>& gold) {
  std::map<std::pair<std::string, std::string>, const Alignment*> pred_by_pair;
  for (const auto& a : pred) {
    if (!pred_by_pair.emplace(std::pair{a.src_doc_id, a.tgt_doc_id}, &a).second) {
      Fail(ErrorKind::kValidation, "duplicate predicted alignment for " + a.src_doc_id +
                                       " -> " + a.tgt_doc_id);
    }
  }
  std::int64_t tp = 0, fp = 0, fn = 0;
  std::size_t matched = 0;
  for (const auto& g : gold) {
    auto it = pred_by_pair.find({g.src_doc_id, g.tgt_doc_id});
    if (it == pred_by_pair.end()) {
      fn += static_cast<std::int64_t>(InducedLinks(g).size());
      continue;
    }
    ++matched;
    Count(*it->second, g, tp, fp, fn);
  }
  if (matched != pred_by_pair.size()) {
    Fail(ErrorKind::kReference, "predicted alignments reference document pairs with no gold");
  }
  return PairEvalFromCounts(tp, fp, fn);
}

}  // namespace spanalign
