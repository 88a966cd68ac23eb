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

#include "spanalign/scorers.h"

#include <algorithm>
#include <set>
#include <span>
#include <string>

#include "spanalign/errors.h"

namespace spanalign {

namespace {

std::string UnitQid(const std::string& doc_id, SentenceRange range) {
  return doc_id + ":" + std::to_string(range.begin) + "-" +
         std::to_string(range.end - 1);
}

std::span<const std::string> TokensOf(const Document& doc, Span span) {
  return std::span<const std::string>(doc.tokens()).subspan(span.start, span.length());
}

}  // namespace

std::vector<PredictionRecord> ScoreLexical(const Document& query_doc,
                                           const Document& target_doc,
                                           const Dictionary& dict,
                                           const LexicalScorerConfig& config) {
  if (config.max_span_sentences < 1 || config.top_k < 1) {
    Fail(ErrorKind::kConfiguration, "lexical scorer needs positive span length and top-k");
  }
  std::vector<PredictionRecord> out;
  for (int q = 0; q < query_doc.num_sentences(); ++q) {
    const SentenceRange query{q, q + 1};
    PredictionRecord record;
    record.query_doc_id = query_doc.doc_id();
    record.target_doc_id = target_doc.doc_id();
    record.query_span = query_doc.TokenSpan(query);
    record.qid = UnitQid(query_doc.doc_id(), query);
    record.null_score = config.null_score;
    record.source = ScoreSource::kLexical;
    const auto query_tokens = TokensOf(query_doc, record.query_span);
    for (int b = 0; b < target_doc.num_sentences(); ++b) {
      for (int len = 1; len <= config.max_span_sentences &&
                        b + len <= target_doc.num_sentences();
           ++len) {
        const Span span = target_doc.TokenSpan(SentenceRange{b, b + len});
        const double sim = LexicalScore(query_tokens, TokensOf(target_doc, span), dict);
        // Position space: token t is position t + 1.
        record.predictions.push_back(
            SpanPrediction{Span{span.start + 1, span.end + 1}, sim});
      }
    }
    MaterializePredictions(record, config.top_k);
    out.push_back(std::move(record));
  }
  return out;
}

PlantedScorer::PlantedScorer(Alignment gold, double sharpness)
    : gold_(std::move(gold)), sharpness_(sharpness) {
  if (!(sharpness_ > 0.0 && sharpness_ <= 1.0)) {
    Fail(ErrorKind::kConfiguration, "sharpness must lie in (0, 1]");
  }
  ValidateAlignment(gold_, AlignmentCheck::kStrict);
}

PositionDistributions PlantedScorer::Distributions(
    const Document& target_doc, std::optional<SentenceRange> target) const {
  const int positions = target_doc.num_tokens() + 1;
  int start_pos = 0;
  int end_pos = 0;
  if (target && !target->empty()) {
    const Span span = target_doc.TokenSpan(*target);
    start_pos = span.start + 1;
    end_pos = span.end;
  }
  const double rest =
      positions > 1 ? (1.0 - sharpness_) / (positions - 1) : 0.0;
  PositionDistributions dists;
  dists.has_null_slot = true;
  dists.normalized = true;
  dists.start_probs.assign(positions, rest);
  dists.end_probs.assign(positions, rest);
  dists.start_probs[start_pos] = sharpness_;
  dists.end_probs[end_pos] = sharpness_;
  return dists;
}

std::vector<PredictionRecord> PlantedScorer::Score(const Document& query_doc,
                                                   const Document& target_doc,
                                                   int top_k) const {
  if (query_doc.doc_id() != gold_.src_doc_id || target_doc.doc_id() != gold_.tgt_doc_id) {
    Fail(ErrorKind::kReference, "planted gold is for " + gold_.src_doc_id + " -> " +
                                    gold_.tgt_doc_id + ", not " + query_doc.doc_id() +
                                    " -> " + target_doc.doc_id());
  }
  ValidateAlignment(gold_, AlignmentCheck::kStrict, &query_doc, &target_doc);

  struct Unit {
    SentenceRange query;
    std::optional<SentenceRange> target;
  };
  std::vector<Unit> units;
  std::set<int> mentioned;
  for (const auto& group : gold_.links) {
    if (group.src.empty()) continue;
    Unit unit{SentenceRange{group.src.front(), group.src.back() + 1}, std::nullopt};
    if (!group.tgt.empty()) {
      unit.target = SentenceRange{group.tgt.front(), group.tgt.back() + 1};
    }
    mentioned.insert(group.src.begin(), group.src.end());
    units.push_back(unit);
  }
  for (int s = 0; s < query_doc.num_sentences(); ++s) {
    if (!mentioned.contains(s)) units.push_back(Unit{SentenceRange{s, s + 1}, std::nullopt});
  }
  std::sort(units.begin(), units.end(),
            [](const Unit& a, const Unit& b) { return a.query < b.query; });

  std::vector<PredictionRecord> out;
  out.reserve(units.size());
  for (const auto& unit : units) {
    PredictionRecord record;
    record.qid = UnitQid(query_doc.doc_id(), unit.query);
    record.query_doc_id = query_doc.doc_id();
    record.target_doc_id = target_doc.doc_id();
    record.query_span = query_doc.TokenSpan(unit.query);
    record.source = ScoreSource::kPlanted;
    record.has_null_slot = true;
    record.distributions = Distributions(target_doc, unit.target);
    record.null_score =
        record.distributions->start_probs[0] * record.distributions->end_probs[0];
    record.predictions = TopKSpans(*record.distributions, top_k);
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace spanalign
