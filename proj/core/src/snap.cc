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

#include "spanalign/snap.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "spanalign/errors.h"

namespace spanalign {

namespace {

// Closest boundary to `x`; on a tie take the one further outward.
int NearestBoundary(const std::vector<int>& bounds, int x, bool outward_is_left) {
  auto hi = std::lower_bound(bounds.begin(), bounds.end(), x);
  if (hi == bounds.end()) return bounds.back();
  if (*hi == x || hi == bounds.begin()) return *hi;
  const int right = *hi;
  const int left = *(hi - 1);
  const int dl = x - left;
  const int dr = right - x;
  if (dl < dr) return left;
  if (dr < dl) return right;
  return outward_is_left ? left : right;
}

int FloorBoundary(const std::vector<int>& bounds, int x) {
  auto it = std::upper_bound(bounds.begin(), bounds.end(), x);
  return *(it - 1);
}

int CeilBoundary(const std::vector<int>& bounds, int x) {
  return *std::lower_bound(bounds.begin(), bounds.end(), x);
}

}  // namespace

SentenceRange SnapSpan(const Document& doc, Span span, BoundaryRule rule) {
  if (span.is_null()) Fail(ErrorKind::kContract, "cannot snap a null span");
  if (span.start < 0 || span.end > doc.num_tokens() || span.start >= span.end) {
    Fail(ErrorKind::kContract, "span outside document '" + doc.doc_id() + "'");
  }
  const std::vector<int> bounds = doc.Boundaries();
  int lo = 0;
  int hi = 0;
  switch (rule) {
    case BoundaryRule::kNearest:
      lo = NearestBoundary(bounds, span.start, /*outward_is_left=*/true);
      hi = NearestBoundary(bounds, span.end, /*outward_is_left=*/false);
      break;
    case BoundaryRule::kContain:
      lo = CeilBoundary(bounds, span.start);
      hi = FloorBoundary(bounds, span.end);
      break;
    case BoundaryRule::kCover:
      lo = FloorBoundary(bounds, span.start);
      hi = CeilBoundary(bounds, span.end);
      break;
  }
  if (lo >= hi) {
    const int mid = doc.SentenceOfToken(span.start + (span.length() - 1) / 2);
    return SentenceRange{mid, mid + 1};
  }
  return SentenceRange{doc.SentenceOfToken(lo), doc.SentenceOfToken(hi - 1) + 1};
}

std::vector<SentenceUnitCandidate> CollectCandidates(
    const std::vector<PredictionRecord>& records, const Document& query_doc,
    const Document& target_doc, const SnapConfig& config) {
  if (!(config.min_score >= 0.0)) {
    Fail(ErrorKind::kConfiguration, "min_score must be non-negative");
  }
  std::map<std::pair<SentenceRange, SentenceRange>, std::vector<double>> units;
  for (const auto& record : records) {
    if (record.query_doc_id != query_doc.doc_id() ||
        record.target_doc_id != target_doc.doc_id()) {
      Fail(ErrorKind::kReference, "record '" + record.qid + "' refers to " +
                                      record.query_doc_id + " -> " + record.target_doc_id +
                                      ", expected " + query_doc.doc_id() + " -> " +
                                      target_doc.doc_id());
    }
    if (!record.ruled) {
      Fail(ErrorKind::kContract, "record '" + record.qid + "' has not been null-ruled");
    }
    if (record.is_null()) continue;
    const SentenceRange src = SnapSpan(query_doc, record.query_span, config.boundary_rule);
    for (const auto& pred : record.predictions) {
      if (pred.span.is_null() || pred.score < config.min_score) continue;
      const SentenceRange tgt = SnapSpan(target_doc, pred.span, config.boundary_rule);
      units[{src, tgt}].push_back(pred.score);
    }
  }

  std::vector<SentenceUnitCandidate> out;
  out.reserve(units.size());
  for (auto& [key, scores] : units) {
    const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
    const double avg = sum / static_cast<double>(scores.size());
    out.push_back(SentenceUnitCandidate{key.first, key.second, std::move(scores), avg});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SentenceUnitCandidate& a, const SentenceUnitCandidate& b) {
                     return a.avg_score > b.avg_score;
                   });
  return out;
}

std::vector<SentenceUnitCandidate> SwapSides(std::vector<SentenceUnitCandidate> candidates) {
  for (auto& c : candidates) std::swap(c.src, c.tgt);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const SentenceUnitCandidate& a, const SentenceUnitCandidate& b) {
                     if (a.avg_score != b.avg_score) return a.avg_score > b.avg_score;
                     return std::tie(a.src, a.tgt) < std::tie(b.src, b.tgt);
                   });
  return candidates;
}

std::string SerializeCandidates(const std::vector<SentenceUnitCandidate>& candidates,
                                const std::string& src_doc_id,
                                const std::string& tgt_doc_id) {
  std::ostringstream out;
  for (const auto& c : candidates) {
    nlohmann::ordered_json node;
    node["src_doc_id"] = src_doc_id;
    node["tgt_doc_id"] = tgt_doc_id;
    node["src"] = c.src.ids();
    node["tgt"] = c.tgt.ids();
    node["scores"] = c.scores;
    node["avg_score"] = c.avg_score;
    out << node.dump() << '\n';
  }
  return out.str();
}

}  // namespace spanalign
