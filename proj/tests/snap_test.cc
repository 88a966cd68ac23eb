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

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "spanalign/errors.h"
#include "spanalign/snap.h"

namespace spanalign {
namespace {

// Document whose sentence i has lengths[i] tokens.
Document Segmented(const std::string& id, const std::vector<int>& lengths) {
  std::vector<std::string> sentences;
  int next = 0;
  for (int len : lengths) {
    std::string s;
    for (int i = 0; i < len; ++i) s += "t" + std::to_string(next++) + " ";
    sentences.push_back(s);
  }
  return oracle::MakeDoc(id, sentences);
}

PredictionRecord Ruled(const Document& q, SentenceRange query, const Document& t,
                       std::vector<SpanPrediction> preds) {
  PredictionRecord r;
  r.qid = "q";
  r.query_doc_id = q.doc_id();
  r.target_doc_id = t.doc_id();
  r.query_span = q.TokenSpan(query);
  r.predictions = std::move(preds);
  r.ruled = true;
  return r;
}

TEST(SnapSpan, SentenceSpanIsFixedPoint) {
  const Document d = Segmented("d", {3, 2, 4, 1});
  for (auto rule : {BoundaryRule::kNearest, BoundaryRule::kContain, BoundaryRule::kCover}) {
    EXPECT_EQ(SnapSpan(d, d.TokenSpan({2, 3}), rule), (SentenceRange{2, 3}));
  }
}

TEST(SnapSpan, NearestPicksCloserBoundary) {
  const Document d = Segmented("d", {10, 10});
  EXPECT_EQ(SnapSpan(d, Span{9, 20}, BoundaryRule::kNearest), (SentenceRange{1, 2}));
}

TEST(SnapSpan, NearestTiesGoOutward) {
  const Document d = Segmented("d", {4, 4});
  EXPECT_EQ(SnapSpan(d, Span{2, 8}, BoundaryRule::kNearest), (SentenceRange{0, 2}));
  EXPECT_EQ(SnapSpan(d, Span{0, 6}, BoundaryRule::kNearest), (SentenceRange{0, 2}));
}

TEST(SnapSpan, ContainAndCover) {
  const Document d = Segmented("d", {4, 4, 4});
  EXPECT_EQ(SnapSpan(d, Span{3, 12}, BoundaryRule::kContain), (SentenceRange{1, 3}));
  EXPECT_EQ(SnapSpan(d, Span{3, 9}, BoundaryRule::kCover), (SentenceRange{0, 3}));
}

TEST(SnapSpan, CollapsedSpanFallsBackToMidpointSentence) {
  const Document d = Segmented("d", {10, 10});
  // Both ends snap to boundary 10; midpoint token 9 is in sentence 0.
  EXPECT_EQ(SnapSpan(d, Span{8, 11}, BoundaryRule::kNearest), (SentenceRange{0, 1}));
  EXPECT_EQ(SnapSpan(d, Span{1, 3}, BoundaryRule::kContain), (SentenceRange{0, 1}));
}

TEST(SnapSpan, RejectsNullAndOutOfRange) {
  const Document d = Segmented("d", {3});
  EXPECT_ANY_THROW(SnapSpan(d, Span::Null(), BoundaryRule::kNearest));
  EXPECT_ANY_THROW(SnapSpan(d, Span{1, 5}, BoundaryRule::kNearest));
}

TEST(SnapSpan, NearestMatchesLinearScan) {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> lengths;
    const int n = 1 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) lengths.push_back(1 + static_cast<int>(rng() % 9));
    const Document d = Segmented("d", lengths);
    const int m = d.num_tokens();
    const int a = static_cast<int>(rng() % m);
    const int b = a + 1 + static_cast<int>(rng() % (m - a));
    const Span span{a, b};
    const SentenceRange got = SnapSpan(d, span, BoundaryRule::kNearest);
    const auto bounds = d.Boundaries();
    const int lo = oracle::NearestBoundary(bounds, a, /*prefer_low=*/true);
    const int hi = oracle::NearestBoundary(bounds, b, /*prefer_low=*/false);
    if (lo < hi) {
      EXPECT_EQ(d.TokenSpan(got), (Span{lo, hi}));
      ++checked;
    } else {
      const int mid = d.SentenceOfToken(a + (b - a - 1) / 2);
      EXPECT_EQ(got, (SentenceRange{mid, mid + 1}));
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(CollectCandidates, AveragesSpansOfOneUnit) {
  const Document q = Segmented("q", {2, 2});
  const Document t = Segmented("t", {3, 3});
  const auto records = std::vector<PredictionRecord>{
      Ruled(q, {0, 1}, t, {{Span{0, 3}, 0.8}, {Span{1, 3}, 0.4}})};
  const auto units = CollectCandidates(records, q, t, SnapConfig{});
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].src, (SentenceRange{0, 1}));
  EXPECT_EQ(units[0].tgt, (SentenceRange{0, 1}));
  EXPECT_DOUBLE_EQ(units[0].avg_score, 0.6);
}

TEST(CollectCandidates, DropsTinyScoresAndNulls) {
  const Document q = Segmented("q", {2, 2});
  const Document t = Segmented("t", {3, 3});
  std::vector<PredictionRecord> records = {
      Ruled(q, {0, 1}, t, {{Span{0, 3}, 1e-7}}),
      Ruled(q, {1, 2}, t, {{Span::Null(), 0.9}}),
  };
  EXPECT_TRUE(CollectCandidates(records, q, t, SnapConfig{}).empty());
}

TEST(CollectCandidates, ContractAndReferenceErrors) {
  const Document q = Segmented("q", {2});
  const Document t = Segmented("t", {3});
  auto r = Ruled(q, {0, 1}, t, {{Span{0, 3}, 0.5}});
  r.ruled = false;
  EXPECT_ANY_THROW(CollectCandidates({r}, q, t, SnapConfig{}));
  r.ruled = true;
  r.target_doc_id = "other";
  try {
    CollectCandidates({r}, q, t, SnapConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kReference);
  }
}

TEST(CollectCandidates, SwapSidesReorients) {
  SentenceUnitCandidate c{{0, 1}, {2, 4}, {0.5}, 0.5};
  const auto swapped = SwapSides({c});
  EXPECT_EQ(swapped[0].src, (SentenceRange{2, 4}));
  EXPECT_EQ(swapped[0].tgt, (SentenceRange{0, 1}));
}

// Properties over random ruled records: candidate count is bounded by the
// non-null prediction count, each contributing score passes the filter, and
// snapping sentence-aligned spans is the identity.
TEST(SnapProperty, CountBoundFilterAndIdempotence) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Document q = Segmented("q", {2, 3, 1, 2});
    const Document t = Segmented("t", {1, 4, 2, 3, 2});
    std::vector<PredictionRecord> records;
    int non_null = 0;
    for (int s = 0; s < q.num_sentences(); ++s) {
      std::vector<SpanPrediction> preds;
      const int k = static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) {
        const int a = static_cast<int>(rng() % t.num_tokens());
        const int b = a + 1 + static_cast<int>(rng() % (t.num_tokens() - a));
        const double score = rng() % 4 == 0 ? 1e-6 * unit(rng) : unit(rng);
        preds.push_back({Span{a, b}, score});
      }
      std::sort(preds.begin(), preds.end(),
                [](const auto& x, const auto& y) { return x.score > y.score; });
      if (preds.empty()) preds.push_back({Span::Null(), 0.0});
      for (const auto& p : preds) non_null += p.span.is_null() ? 0 : 1;
      records.push_back(Ruled(q, {s, s + 1}, t, preds));
    }
    const SnapConfig cfg{1e-6, static_cast<BoundaryRule>(rng() % 3)};
    const auto units = CollectCandidates(records, q, t, cfg);
    EXPECT_LE(static_cast<int>(units.size()), non_null);
    for (const auto& u : units) {
      for (double s : u.scores) EXPECT_GE(s, cfg.min_score);
    }
    const int a = static_cast<int>(rng() % t.num_sentences());
    const int b = a + 1 + static_cast<int>(rng() % (t.num_sentences() - a));
    for (auto rule : {BoundaryRule::kNearest, BoundaryRule::kContain, BoundaryRule::kCover}) {
      EXPECT_EQ(SnapSpan(t, t.TokenSpan({a, b}), rule), (SentenceRange{a, b}));
    }
  }
}

}  // namespace
}  // namespace spanalign
