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

#include <gtest/gtest.h>

#include "spanalign/fixture.h"

namespace spanalign {
namespace {

TEST(Fixture, GoldIsValidAndHasNullSentences) {
  const BitextFixture fx = GenerateFixture(FixtureConfig{});
  ASSERT_EQ(fx.src_docs.size(), 30u);
  ASSERT_EQ(fx.gold.size(), 30u);
  long sentences = 0, null_sentences = 0;
  for (std::size_t d = 0; d < fx.gold.size(); ++d) {
    EXPECT_NO_THROW(ValidateAlignment(fx.gold[d], AlignmentCheck::kStrict, &fx.src_docs[d],
                                      &fx.tgt_docs[d]));
    sentences += fx.src_docs[d].num_sentences() + fx.tgt_docs[d].num_sentences();
    for (const auto& g : fx.gold[d].links) {
      if (g.is_null()) null_sentences += static_cast<long>(g.src.size() + g.tgt.size());
    }
  }
  EXPECT_GE(static_cast<double>(null_sentences), 0.10 * static_cast<double>(sentences));
}

TEST(Fixture, DictionaryTranslatesSourceWords) {
  const BitextFixture fx = GenerateFixture(FixtureConfig{});
  const Document& src = fx.src_docs.front();
  for (const auto& g : fx.gold.front().links) {
    for (int i : g.src) {
      for (const auto& token : src.sentences()[i].tokens) {
        EXPECT_EQ(fx.dictionary.Covers(token), !g.tgt.empty()) << token;
      }
    }
  }
  EXPECT_TRUE(fx.tgt_docs.front().no_space());
}

TEST(Fixture, DeterministicPerSeed) {
  FixtureConfig cfg;
  cfg.num_docs = 5;
  const BitextFixture a = GenerateFixture(cfg);
  const BitextFixture b = GenerateFixture(cfg);
  EXPECT_EQ(a.src_docs, b.src_docs);
  EXPECT_EQ(a.tgt_docs, b.tgt_docs);
  EXPECT_EQ(a.gold, b.gold);
  cfg.seed = 2;
  EXPECT_NE(GenerateFixture(cfg).gold, a.gold);
}

TEST(Fixture, OneToOneIsSentenceParallel) {
  FixtureConfig cfg;
  cfg.num_docs = 4;
  cfg.null_ratio = 0.0;
  cfg.multi_sentence_rate = 0.0;
  cfg.shuffle_target = false;
  const BitextFixture fx = GenerateFixture(cfg);
  for (std::size_t d = 0; d < fx.gold.size(); ++d) {
    EXPECT_EQ(fx.src_docs[d].num_sentences(), fx.tgt_docs[d].num_sentences());
    for (std::size_t i = 0; i < fx.gold[d].links.size(); ++i) {
      EXPECT_EQ(fx.gold[d].links[i].src, std::vector<int>{static_cast<int>(i)});
      EXPECT_EQ(fx.gold[d].links[i].tgt, std::vector<int>{static_cast<int>(i)});
    }
  }
}

}  // namespace
}  // namespace spanalign
