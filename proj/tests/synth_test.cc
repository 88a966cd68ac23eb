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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.h"
#include "spanalign/errors.h"
#include "spanalign/random.h"
#include "spanalign/synth.h"

namespace spanalign {
namespace {

// Pair i has source "s<i> ..." and a target that starts with a unique
// non-ASCII marker, so sentences can be counted inside a context.
ParallelCorpus MakeCorpus(int k, int docs = 1, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  ParallelCorpus c;
  const std::vector<std::string> vocab = {"é", "日本", "w", "ß", "x"};
  for (int i = 0; i < k; ++i) {
    ParallelPair p;
    p.src.tokens = {"s" + std::to_string(i)};
    p.tgt.tokens = {"¶" + std::to_string(i)};
    const int extra = static_cast<int>(rng() % 4);
    for (int j = 0; j < extra; ++j) {
      p.src.tokens.push_back(vocab[rng() % vocab.size()]);
      p.tgt.tokens.push_back(vocab[rng() % vocab.size()]);
    }
    p.src.text = Detokenize(p.src.tokens, false);
    p.tgt.text = Detokenize(p.tgt.tokens, false);
    p.doc = i * docs / k;
    c.pairs.push_back(p);
  }
  return c;
}

long Markers(const std::string& s) {
  long n = 0;
  for (std::size_t pos = s.find("¶"); pos != std::string::npos; pos = s.find("¶", pos + 1)) {
    ++n;
  }
  return n;
}

TEST(Synthesize, NineNegativesGiveTenSentences) {
  SynthConfig cfg;
  cfg.num_negatives = 9;
  const auto records = Synthesize(MakeCorpus(50), cfg);
  ASSERT_EQ(records.size(), 50u);
  for (const auto& r : records) {
    EXPECT_EQ(Markers(r.context), 10);
    EXPECT_EQ(r.context_sentences, 10);
    EXPECT_EQ(oracle::CodePointSubstr(r.context, r.answer_start,
                                      oracle::CodePointLength(r.answer_text)),
              r.answer_text);
  }
}

TEST(Synthesize, ZeroNegativesContextIsAnswer) {
  SynthConfig cfg;
  cfg.num_negatives = 0;
  for (const auto& r : Synthesize(MakeCorpus(5), cfg)) {
    EXPECT_EQ(r.context, r.answer_text);
    EXPECT_EQ(r.answer_start, 0);
  }
}

TEST(Synthesize, AnswerPositionIsUniform) {
  SynthConfig cfg;
  cfg.num_negatives = 4;
  cfg.seed = 17;
  const auto records = Synthesize(MakeCorpus(1000), cfg);
  ASSERT_EQ(records.size(), 1000u);
  std::vector<long> counts(5, 0);
  for (const auto& r : records) {
    // Independent position: markers that precede the answer.
    ++counts[Markers(oracle::CodePointSubstr(r.context, 0, r.answer_start))];
  }
  EXPECT_LT(oracle::ChiSquareUniform(counts), oracle::ChiSquareCritical(4, 0.01));
}

TEST(Synthesize, NegativesNeverRepeatTheAnswer) {
  ParallelCorpus c = MakeCorpus(30);
  // Closed markers keep substring matches exact.
  for (auto& p : c.pairs) {
    p.tgt.tokens = {p.tgt.tokens.front() + "#"};
    p.tgt.text = p.tgt.tokens.front();
  }
  for (int i = 0; i < 30; i += 3) c.pairs[i].tgt = c.pairs[0].tgt;
  SynthConfig cfg;
  cfg.num_negatives = 5;
  for (const auto& r : Synthesize(c, cfg)) {
    std::size_t count = 0;
    for (std::size_t p = r.context.find(r.answer_text); p != std::string::npos;
         p = r.context.find(r.answer_text, p + 1)) {
      ++count;
    }
    EXPECT_EQ(count, 1u) << r.qid;
  }
}

TEST(Synthesize, ContextualUsesNeighbours) {
  const ParallelCorpus c = MakeCorpus(40, 2);
  SynthConfig cfg;
  cfg.mode = SamplingMode::kContextual;
  cfg.num_negatives = 3;
  const auto records = Synthesize(c, cfg);
  ASSERT_EQ(records.size(), 40u);
  for (const auto& r : records) {
    const int idx = std::stoi(r.qid.substr(r.qid.find(':') + 1));
    std::string expected;
    const int first = idx - r.answer_position;
    for (int j = first; j < first + 4; ++j) {
      if (j > first) expected += " ";
      expected += c.pairs[j].tgt.text;
      EXPECT_EQ(c.pairs[j].doc, c.pairs[idx].doc);
    }
    EXPECT_EQ(r.context, expected);
  }
}

TEST(Synthesize, LengthFilter) {
  ParallelCorpus c = MakeCorpus(20);
  c.pairs[3].src.tokens.assign(5, "q");
  c.pairs[3].src.text = Detokenize(c.pairs[3].src.tokens, false);
  SynthConfig cfg;
  cfg.num_negatives = 2;
  cfg.max_query_tokens = 4;
  cfg.max_context_tokens = 12;
  const auto records = Synthesize(c, cfg);
  for (const auto& r : records) {
    EXPECT_NE(r.qid, "corpus:3:src-tgt");
    EXPECT_LE(std::count(r.question.begin(), r.question.end(), ' ') + 1, 4);
    EXPECT_LE(std::count(r.context.begin(), r.context.end(), ' ') + 1, 12);
  }
  EXPECT_LT(records.size(), 20u);
}

TEST(Synthesize, ConfigurationErrors) {
  SynthConfig cfg;
  cfg.num_negatives = 5;
  EXPECT_ANY_THROW(Synthesize(MakeCorpus(5), cfg));
  EXPECT_ANY_THROW(Synthesize(ParallelCorpus{}, cfg));
  cfg.num_negatives = -1;
  EXPECT_ANY_THROW(cfg.Validate());
}

TEST(Synthesize, QidAndDeterminism) {
  SynthConfig cfg;
  cfg.num_negatives = 3;
  cfg.seed = 7;
  cfg.corpus_name = "wmt";
  const auto a = SerializeSquad(Synthesize(MakeCorpus(30), cfg), cfg);
  const auto b = SerializeSquad(Synthesize(MakeCorpus(30), cfg), cfg);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"wmt:0:src-tgt\""), std::string::npos);
  cfg.seed = 8;
  EXPECT_NE(SerializeSquad(Synthesize(MakeCorpus(30), cfg), cfg), a);
}

TEST(Synthesize, SquadLayout) {
  SynthConfig cfg;
  cfg.num_negatives = 1;
  const auto json = nlohmann::json::parse(SerializeSquad(Synthesize(MakeCorpus(3), cfg), cfg));
  EXPECT_EQ(json["version"], "v1.1");
  const auto& qa = json["data"][0]["paragraphs"][0]["qas"][0];
  EXPECT_TRUE(qa.contains("answers"));
  EXPECT_FALSE(qa.contains("is_impossible"));
}

class NullExamples : public ::testing::Test {
 protected:
  Document src = oracle::MakeDoc("s", {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"});
  Document tgt = oracle::MakeDoc("t", {"A", "B", "C", "D", "E", "F", "G", "H", "I"});
  Alignment gold{"s", "t", {}};

  void SetUp() override {
    for (int i = 0; i < 9; ++i) gold.links.push_back({{i}, {i}, {}});
    gold.links.push_back({{9}, {}, {}});
  }

  SynthConfig Config(double cap) {
    SynthConfig cfg;
    cfg.version = SquadVersion::kV20;
    cfg.null_cap = cap;
    return cfg;
  }
};

TEST_F(NullExamples, CapAndUnalignedSource) {
  const auto out = SynthesizeNullExamples({{&src, &tgt, &gold}}, Config(0.10));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].is_impossible);
  EXPECT_EQ(out[0].question, "j");
  EXPECT_EQ(out[0].answer_start, -1);
}

TEST_F(NullExamples, FullyAlignedOrZeroCapGivesNone) {
  Alignment all{"s", "t", {}};
  const Document t10 = oracle::MakeDoc("t", {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"});
  for (int i = 0; i < 10; ++i) all.links.push_back({{i}, {i}, {}});
  EXPECT_TRUE(SynthesizeNullExamples({{&src, &t10, &all}}, Config(0.10)).empty());
  EXPECT_TRUE(SynthesizeNullExamples({{&src, &tgt, &gold}}, Config(0.0)).empty());
}

TEST_F(NullExamples, NeedsVersionTwo) {
  SynthConfig cfg = Config(0.1);
  cfg.version = SquadVersion::kV11;
  EXPECT_ANY_THROW(SynthesizeNullExamples({{&src, &tgt, &gold}}, cfg));
  const auto json = nlohmann::json::parse(
      SerializeSquad(SynthesizeNullExamples({{&src, &tgt, &gold}}, Config(0.1)), Config(0.1)));
  EXPECT_EQ(json["version"], "v2.0");
  EXPECT_TRUE(json["data"][0]["paragraphs"][0]["qas"][0]["is_impossible"].get<bool>());
}

TEST(StreamRng, BelowStaysInRangeAndStreamsDiffer) {
  StreamRng a(1, 0), b(1, 1);
  EXPECT_NE(a.Next(), b.Next());
  for (int i = 0; i < 1000; ++i) EXPECT_LT(a.Below(7), 7u);
  const double u = a.Unit();
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
}

TEST(ParallelCorpus, FromAlignmentsUsesOneToOneGroups) {
  const Document s = oracle::MakeDoc("s", {"a", "b", "c"});
  const Document t = oracle::MakeDoc("t", {"A", "B C"});
  const std::vector<Alignment> gold = {{"s", "t", {{{0}, {1}, {}}, {{1, 2}, {0}, {}}}}};
  const auto c = ParallelCorpusFromAlignments({s}, {t}, gold);
  ASSERT_EQ(c.pairs.size(), 1u);
  EXPECT_EQ(c.pairs[0].src.text, "a");
  EXPECT_EQ(c.pairs[0].tgt.text, "B C");
  EXPECT_ANY_THROW(ParallelCorpusFromDocuments({s}, {t}));
}

}  // namespace
}  // namespace spanalign
