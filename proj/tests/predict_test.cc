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

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "spanalign/dictionary.h"
#include "spanalign/errors.h"
#include "spanalign/predict.h"
#include "spanalign/prediction_io.h"
#include "spanalign/scorers.h"

namespace spanalign {
namespace {

PositionDistributions Dists(std::vector<double> p1, std::vector<double> p2,
                            bool slot = false) {
  PositionDistributions d;
  d.start_probs = std::move(p1);
  d.end_probs = std::move(p2);
  d.has_null_slot = slot;
  return d;
}

PositionDistributions RandomDists(std::mt19937_64& rng, int m, bool ties) {
  std::vector<double> p1(m), p2(m);
  const double levels[] = {0.0, 0.125, 0.25, 0.5};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < m; ++i) {
    p1[i] = ties ? levels[rng() % 4] : unit(rng);
    p2[i] = ties ? levels[rng() % 4] : unit(rng);
  }
  return Dists(p1, p2, rng() % 2 == 0);
}

TEST(BestSpan, PointMasses) {
  const auto best = BestSpan(Dists({1, 0}, {0, 1}));
  EXPECT_EQ(best.span, (Span{1, 3}));
  EXPECT_EQ(best.score, 1.0);
}

TEST(BestSpan, UniformTieGoesToFirstSingleton) {
  const double u = 1.0 / 3.0;
  const auto best = BestSpan(Dists({u, u, u}, {u, u, u}));
  EXPECT_EQ(best.span, (Span{1, 2}));
  EXPECT_DOUBLE_EQ(best.score, 1.0 / 9.0);
}

TEST(BestSpan, RejectsMalformedInput) {
  EXPECT_ANY_THROW(BestSpan(Dists({}, {})));
  EXPECT_ANY_THROW(BestSpan(Dists({0.5}, {0.5, 0.5})));
  EXPECT_ANY_THROW(BestSpan(Dists({-0.1}, {0.5})));
  EXPECT_ANY_THROW(BestSpan(Dists({NAN}, {0.5})));
}

TEST(BestSpan, MatchesBruteForceOnFuzz) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = RandomDists(rng, 50, trial % 2 == 1);
    EXPECT_EQ(BestSpan(d), oracle::AllSpansSorted(d).front());
  }
}

TEST(TopKSpans, KOneIsBestSpan) {
  std::mt19937_64 rng(3);
  const auto d = RandomDists(rng, 12, false);
  EXPECT_EQ(TopKSpans(d, 1), std::vector<SpanPrediction>{BestSpan(d)});
}

TEST(TopKSpans, LargeKListsEverySpan) {
  std::mt19937_64 rng(4);
  const auto d = RandomDists(rng, 9, true);
  EXPECT_EQ(TopKSpans(d, 1000), oracle::AllSpansSorted(d));
  EXPECT_EQ(TopKSpans(d, 45).size(), 45u);
}

TEST(TopKSpans, FirstFiveOfBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = RandomDists(rng, 1 + static_cast<int>(rng() % 30), trial % 3 == 0);
    auto all = oracle::AllSpansSorted(d);
    all.resize(std::min<std::size_t>(5, all.size()));
    EXPECT_EQ(TopKSpans(d, 5), all);
  }
}

TEST(TopKSpans, RejectsNonPositiveK) {
  EXPECT_ANY_THROW(TopKSpans(Dists({1}, {1}), 0));
}

// Property: the best span's score is the maximum of the top-k scores.
TEST(PredictProperty, BestEqualsTopOfList) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = RandomDists(rng, 1 + static_cast<int>(rng() % 40), trial % 2 == 0);
    const auto top = TopKSpans(d, 1 + static_cast<int>(rng() % 10));
    double mx = -1;
    for (const auto& p : top) mx = std::max(mx, p.score);
    EXPECT_EQ(BestSpan(d).score, mx);
  }
}

// Property: scaling p1 by a and p2 by b scales scores by a*b and keeps the
// argmax. Powers of two keep the products exact.
TEST(PredictProperty, ScaleCovariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto d = RandomDists(rng, 1 + static_cast<int>(rng() % 40), trial % 2 == 0);
    const double a = std::ldexp(1.0, -static_cast<int>(rng() % 4));
    const double b = std::ldexp(1.0, -static_cast<int>(rng() % 4));
    auto scaled = d;
    for (double& x : scaled.start_probs) x *= a;
    for (double& x : scaled.end_probs) x *= b;
    const auto base = BestSpan(d);
    const auto s = BestSpan(scaled);
    EXPECT_EQ(s.span, base.span);
    EXPECT_EQ(s.score, base.score * a * b);
  }
}

PredictionRecord Raw(double best, double null_score) {
  PredictionRecord r;
  r.qid = "q";
  r.predictions = {SpanPrediction{Span{1, 3}, best}};
  r.null_score = null_score;
  return r;
}

TEST(NullRule, ThresholdExamples) {
  const NullRule keep{NullMode::kScoreThreshold, 0.0};
  const NullRule strict{NullMode::kScoreThreshold, 0.2};
  const auto kept = ApplyNullRule(Raw(0.6, 0.5), keep);
  EXPECT_FALSE(kept.is_null());
  EXPECT_EQ(kept.best()->span, (Span{0, 2}));
  EXPECT_TRUE(ApplyNullRule(Raw(0.6, 0.5), strict).is_null());
}

TEST(NullRule, NaTokenBestSlotIsNull) {
  PredictionRecord r;
  r.has_null_slot = true;
  r.predictions = {{Span{0, 1}, 0.7}, {Span{2, 4}, 0.2}};
  EXPECT_TRUE(ApplyNullRule(r, NullRule{}).is_null());
  r.predictions = {{Span{2, 4}, 0.7}, {Span{0, 1}, 0.2}};
  const auto ruled = ApplyNullRule(r, NullRule{});
  ASSERT_FALSE(ruled.is_null());
  EXPECT_EQ(ruled.best()->span, (Span{1, 3}));
}

TEST(NullRule, NaTokenNeedsSlot) {
  EXPECT_ANY_THROW(ApplyNullRule(Raw(0.6, 0.5), NullRule{NullMode::kNaToken, 0.0}));
}

TEST(NullRule, ThresholdDropsSlotSpans) {
  PredictionRecord r;
  r.has_null_slot = true;
  r.null_score = 0.1;
  r.predictions = {{Span{0, 1}, 0.9}, {Span{3, 4}, 0.3}};
  const auto ruled = ApplyNullRule(r, NullRule{NullMode::kScoreThreshold, 0.0});
  ASSERT_FALSE(ruled.is_null());
  EXPECT_EQ(ruled.best()->span, (Span{2, 3}));
}

// Property: once NULL at tau1, NULL at every larger tau.
TEST(PredictProperty, NullRuleMonotoneInTau) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto r = Raw(unit(rng), unit(rng));
    bool was_null = false;
    for (double tau = -2.0; tau <= 2.0; tau += 0.05) {
      const bool now = ApplyNullRule(r, NullRule{NullMode::kScoreThreshold, tau}).is_null();
      EXPECT_TRUE(!was_null || now);
      was_null = now;
    }
  }
}

Dictionary Dict(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Dictionary d;
  for (const auto& [a, b] : pairs) d.Add(a, b);
  return d;
}

TEST(Lexical, ScoreExamples) {
  const Dictionary d = Dict({{"a", "A"}, {"b", "B"}, {"c", "C"}});
  const std::vector<std::string> abc = {"a", "b", "c"}, ABC = {"A", "B", "C"};
  EXPECT_EQ(LexicalScore(abc, ABC, d), 1.0);
  const std::vector<std::string> xyz = {"x", "y", "z"};
  EXPECT_EQ(LexicalScore(xyz, ABC, d), 0.0);
  const std::vector<std::string> s4 = {"a", "b", "q", "r"}, t4 = {"A", "B", "Q", "R"};
  EXPECT_EQ(LexicalScore(s4, t4, d), 0.5);
}

TEST(Lexical, MatchingIsOneToOne) {
  const Dictionary d = Dict({{"a", "A"}});
  const std::vector<std::string> s = {"a", "a"}, t = {"A"};
  EXPECT_EQ(GreedyMatchCount(s, t, d), 1);
}

TEST(Lexical, DictionaryRoundTrip) {
  const Dictionary d = Dict({{"b", "B"}, {"a", "A"}, {"a", "Á"}});
  std::istringstream in(SerializeDictionary(d));
  EXPECT_EQ(ReadDictionary(in, "mem").Pairs(), d.Pairs());
  std::istringstream bad("a b\n");
  EXPECT_ANY_THROW(ReadDictionary(bad, "mem"));
}

// Property: with a one-to-one dictionary, swapping arguments and inverting
// the dictionary preserves the score.
TEST(PredictProperty, LexicalSwapSymmetry) {
  std::mt19937_64 rng(9);
  Dictionary d;
  for (int i = 0; i < 20; ++i) d.Add("s" + std::to_string(i), "t" + std::to_string(i));
  const Dictionary inv = d.Inverted();
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> s, t;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i) {
      s.push_back("s" + std::to_string(rng() % 25));
    }
    for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i) {
      t.push_back("t" + std::to_string(rng() % 25));
    }
    EXPECT_EQ(LexicalScore(s, t, d), LexicalScore(t, s, inv));
  }
}

TEST(LexicalScorer, FindsTranslatedSentence) {
  const Document q = oracle::MakeDoc("q", {"a b", "c"});
  const Document t = oracle::MakeDoc("t", {"C", "A B"});
  const Dictionary d = Dict({{"a", "A"}, {"b", "B"}, {"c", "C"}});
  const auto records = ScoreLexical(q, t, d, LexicalScorerConfig{});
  ASSERT_EQ(records.size(), 2u);
  const auto r0 = ApplyNullRule(records[0], NullRule{NullMode::kScoreThreshold, 0.0});
  EXPECT_EQ(r0.best()->span, t.TokenSpan(SentenceRange{1, 2}));
  EXPECT_EQ(r0.best()->score, 1.0);
}

Alignment PlantedGold() {
  return Alignment{"s", "t", {{{0}, {1, 2}, {}}, {{1, 2}, {0}, {}}, {{3}, {}, {}}}};
}

TEST(PlantedScorer, SharpRecoversGoldAndNulls) {
  const Document s = oracle::MakeDoc("s", {"a", "b c", "d", "e f"});
  const Document t = oracle::MakeDoc("t", {"A B", "C", "D E", "F"});
  const auto records = PlantedScorer(PlantedGold(), 1.0).Score(s, t, 5);
  ASSERT_EQ(records.size(), 3u);
  const auto r0 = ApplyNullRule(records[0], NullRule{});
  EXPECT_EQ(r0.best()->span, t.TokenSpan(SentenceRange{1, 3}));
  EXPECT_EQ(r0.query_span, s.TokenSpan(SentenceRange{0, 1}));
  const auto r1 = ApplyNullRule(records[1], NullRule{});
  EXPECT_EQ(r1.best()->span, t.TokenSpan(SentenceRange{0, 1}));
  EXPECT_TRUE(ApplyNullRule(records[2], NullRule{}).is_null());
}

TEST(PlantedScorer, SoftGoldSpanIsStrictlyLargest) {
  const Document t = oracle::MakeDoc("t", {"a b", "c", "d e f", "g", "h i"});
  const PlantedScorer scorer(Alignment{"s", "t", {}}, 0.6);
  const auto dists = scorer.Distributions(t, SentenceRange{1, 3});
  const auto all = oracle::AllSpansSorted(dists);
  const Span gold = t.TokenSpan(SentenceRange{1, 3});
  EXPECT_EQ(all[0].span, (Span{gold.start + 1, gold.end + 1}));
  EXPECT_GE(all[0].score, 0.36 - 1e-12);
  EXPECT_GT(all[0].score, all[1].score);
}

TEST(PlantedScorer, RejectsBadSharpness) {
  EXPECT_ANY_THROW(PlantedScorer(PlantedGold(), 0.0));
  EXPECT_ANY_THROW(PlantedScorer(PlantedGold(), 1.5));
}

std::string PredictionText(const std::string& header, const std::string& body) {
  return header + "\n" + body + "\n";
}

TEST(PredictionIo, SpanListsAreInclusiveOnDisk) {
  std::istringstream in(PredictionText(
      R"({"direction":"src-tgt","producer":"x"})",
      R"({"qid":"q","query_doc_id":"s","query_span":[1,2],"target_doc_id":"t",)"
      R"("spans":[{"span":[1,1],"score":0.2},{"span":[2,3],"score":0.7}]})"));
  const auto file = ReadPredictions(in, "mem", 5);
  ASSERT_EQ(file.records.size(), 1u);
  const auto& r = file.records[0];
  EXPECT_EQ(r.query_span, (Span{0, 2}));
  EXPECT_EQ(r.predictions[0].span, (Span{2, 4}));
  EXPECT_EQ(r.predictions[1].span, (Span{1, 2}));
}

TEST(PredictionIo, LogSpaceVectorsAreExponentiated) {
  std::istringstream in(PredictionText(
      R"({"direction":"tgt-src","log_space":true})",
      R"({"qid":"q","query_doc_id":"s","query_span":[1,1],"target_doc_id":"t",)"
      R"("start_probs":[0.0,-1e9],"end_probs":[-1e9,0.0]})"));
  const auto file = ReadPredictions(in, "mem", 1);
  EXPECT_EQ(file.header.direction, Direction::kTgtToSrc);
  EXPECT_EQ(file.records[0].predictions[0].span, (Span{1, 3}));
  EXPECT_EQ(file.records[0].predictions[0].score, 1.0);
}

TEST(PredictionIo, HeaderErrorsNameTheLine) {
  std::istringstream no_header(R"({"qid":"q"})");
  EXPECT_ANY_THROW(ReadPredictions(no_header, "mem", 1));
  std::istringstream bad(PredictionText(
      R"({"direction":"src-tgt"})",
      R"({"qid":"q","query_doc_id":"s","query_span":[1,1],"target_doc_id":"t",)"
      R"("spans":[{"span":[0,2],"score":0.5}]})"));
  try {
    ReadPredictions(bad, "mem", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("mem:2"), std::string::npos);
  }
}

TEST(PredictionIo, SlotSpanReachingTokensIsShifted) {
  std::istringstream in(PredictionText(
      R"({"direction":"src-tgt","null_slot":true})",
      R"({"qid":"q","query_doc_id":"s","query_span":[1,1],"target_doc_id":"t",)"
      R"("spans":[{"span":[0,2],"score":0.5}]})"));
  const auto file = ReadPredictions(in, "mem", 1);
  const auto ruled = ApplyNullRule(file.records[0], NullRule{});
  ASSERT_FALSE(ruled.is_null());
  EXPECT_EQ(ruled.best()->span, (Span{0, 2}));
  EXPECT_TRUE(
      ApplyNullRule(file.records[0], NullRule{NullMode::kScoreThreshold, 0.0}).is_null());
}

TEST(PredictionIo, SerializeRoundTrip) {
  PredictionFile file;
  file.header.direction = Direction::kSrcToTgt;
  file.header.null_slot = true;
  file.header.normalized = true;
  const Document s = oracle::MakeDoc("s", {"a", "b c", "d", "e f"});
  const Document t = oracle::MakeDoc("t", {"A B", "C", "D E", "F"});
  file.records = PlantedScorer(PlantedGold(), 0.9).Score(s, t, 4);
  for (bool with : {false, true}) {
    std::istringstream in(SerializePredictions(file, with));
    const auto back = ReadPredictions(in, "mem", 4);
    ASSERT_EQ(back.records.size(), file.records.size());
    for (std::size_t i = 0; i < back.records.size(); ++i) {
      EXPECT_EQ(back.records[i].predictions, file.records[i].predictions);
      EXPECT_EQ(back.records[i].query_span, file.records[i].query_span);
      EXPECT_EQ(back.records[i].null_score, file.records[i].null_score);
    }
  }
}

}  // namespace
}  // namespace spanalign
