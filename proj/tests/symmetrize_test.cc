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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "spanalign/symmetrize.h"

namespace spanalign {
namespace {

PredictionRecord Ruled(const Document& q, int sent, const Document& t, Span best,
                       double prob) {
  PredictionRecord r;
  r.qid = q.doc_id() + std::to_string(sent);
  r.query_doc_id = q.doc_id();
  r.target_doc_id = t.doc_id();
  r.query_span = q.TokenSpan({sent, sent + 1});
  r.predictions = {{best, prob}};
  r.ruled = true;
  return r;
}

DirectedSentenceScore Fwd(int s, int t, double p) {
  return {s, t, p, Direction::kSrcToTgt};
}
DirectedSentenceScore Rev(int s, int t, double p) {
  return {s, t, p, Direction::kTgtToSrc};
}

class DirectedScoresTest : public ::testing::Test {
 protected:
  Document q = oracle::MakeDoc("q", {"a"});
  Document t = oracle::MakeDoc("t", {"a b", "c", "d e", "f g", "h", "i j k"});
};

TEST_F(DirectedScoresTest, ExactSentenceCover) {
  const auto s = DirectedScores({Ruled(q, 0, t, t.TokenSpan({3, 4}), 0.9)}, q, t,
                                Direction::kSrcToTgt);
  EXPECT_EQ(s, (std::vector<DirectedSentenceScore>{Fwd(0, 3, 0.9)}));
}

TEST_F(DirectedScoresTest, TwoSentencesShareProbability) {
  const auto s = DirectedScores({Ruled(q, 0, t, t.TokenSpan({2, 4}), 0.6)}, q, t,
                                Direction::kSrcToTgt);
  EXPECT_EQ(s, (std::vector<DirectedSentenceScore>{Fwd(0, 2, 0.6), Fwd(0, 3, 0.6)}));
}

TEST_F(DirectedScoresTest, PartialCoverGivesNothing) {
  const Span inside{t.TokenSpan({5, 6}).start, t.TokenSpan({5, 6}).start + 2};
  EXPECT_TRUE(DirectedScores({Ruled(q, 0, t, inside, 0.9)}, q, t, Direction::kSrcToTgt)
                  .empty());
}

TEST_F(DirectedScoresTest, ReverseDirectionReportsForwardIds) {
  const auto s = DirectedScores({Ruled(q, 0, t, t.TokenSpan({1, 2}), 0.5)}, q, t,
                                Direction::kTgtToSrc);
  EXPECT_EQ(s, (std::vector<DirectedSentenceScore>{Rev(1, 0, 0.5)}));
}

TEST_F(DirectedScoresTest, UnruledIsContractError) {
  auto r = Ruled(q, 0, t, t.TokenSpan({0, 1}), 0.5);
  r.ruled = false;
  EXPECT_ANY_THROW(DirectedScores({r}, q, t, Direction::kSrcToTgt));
}

TEST(AverageAndThreshold, Examples) {
  const SymConfig cfg{0.4, MissingDirectionPolicy::kHalf};
  const auto both = AverageAndThreshold({Fwd(0, 0, 0.9)}, {Rev(0, 0, 0.7)}, cfg, "s", "t");
  ASSERT_EQ(both.links.size(), 1u);
  EXPECT_DOUBLE_EQ(*both.links[0].score, 0.8);
  EXPECT_TRUE(AverageAndThreshold({Fwd(0, 0, 0.5)}, {}, cfg, "s", "t").links.empty());
  EXPECT_TRUE(
      AverageAndThreshold({Fwd(0, 0, 0.4)}, {Rev(0, 0, 0.4)}, cfg, "s", "t").links.empty());
}

TEST(AverageAndThreshold, SkipPolicyIgnoresOneSidedPairs) {
  const SymConfig skip{0.1, MissingDirectionPolicy::kSkip};
  EXPECT_TRUE(AverageAndThreshold({Fwd(0, 0, 0.9)}, {}, skip, "s", "t").links.empty());
  const SymConfig half{0.1, MissingDirectionPolicy::kHalf};
  EXPECT_EQ(AverageAndThreshold({Fwd(0, 0, 0.9)}, {}, half, "s", "t").links.size(), 1u);
}

TEST(AverageAndThreshold, ConnectedPairsFormOneGroup) {
  const SymConfig cfg{0.4};
  const auto a = AverageAndThreshold({Fwd(0, 0, 0.9), Fwd(1, 0, 0.9), Fwd(3, 2, 0.9)},
                                     {Rev(0, 0, 0.9), Rev(1, 0, 0.9), Rev(3, 2, 0.9)}, cfg,
                                     "s", "t");
  ASSERT_EQ(a.links.size(), 2u);
  EXPECT_EQ(a.links[0].src, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.links[0].tgt, (std::vector<int>{0}));
  EXPECT_EQ(a.links[1].src, (std::vector<int>{3}));
}

TEST(AverageAndThreshold, RejectsThetaOutsideUnitInterval) {
  EXPECT_ANY_THROW(AverageAndThreshold({}, {}, SymConfig{1.5}, "s", "t"));
}

std::vector<DirectedSentenceScore> RandomScores(std::mt19937_64& rng, Direction d) {
  std::vector<DirectedSentenceScore> out;
  std::set<std::pair<int, int>> seen;
  const int n = static_cast<int>(rng() % 12);
  for (int i = 0; i < n; ++i) {
    const int s = static_cast<int>(rng() % 6), t = static_cast<int>(rng() % 6);
    if (!seen.insert({s, t}).second) continue;
    out.push_back({s, t, std::uniform_real_distribution<double>(0, 1)(rng), d});
  }
  return out;
}

std::set<std::pair<int, int>> LinksOf(const Alignment& a) { return oracle::Links(a.links); }

// Properties: swapping document roles transposes the result, raising theta
// only removes links, and the output depends on the inputs only through the
// pair averages.
TEST(SymmetrizeProperty, SwapMonotoneAndAverageOnly) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = RandomScores(rng, Direction::kSrcToTgt);
    const auto r = RandomScores(rng, Direction::kTgtToSrc);
    const SymConfig cfg{0.3, trial % 2 ? MissingDirectionPolicy::kHalf
                                       : MissingDirectionPolicy::kSkip};
    const Alignment a = AverageAndThreshold(f, r, cfg, "s", "t");

    auto swap = [](std::vector<DirectedSentenceScore> v, Direction d) {
      for (auto& x : v) {
        std::swap(x.src_sent_id, x.tgt_sent_id);
        x.direction = d;
      }
      return v;
    };
    const Alignment b = AverageAndThreshold(swap(r, Direction::kSrcToTgt),
                                            swap(f, Direction::kTgtToSrc), cfg, "t", "s");
    EXPECT_EQ(LinksOf(Transpose(a)), LinksOf(b));

    const Alignment higher = AverageAndThreshold(f, r, SymConfig{0.6, cfg.missing}, "s", "t");
    for (const auto& link : LinksOf(higher)) EXPECT_TRUE(LinksOf(a).contains(link));

    // Shifting mass between directions while keeping each average leaves
    // the result unchanged.
    std::vector<DirectedSentenceScore> f2 = f, r2 = r;
    for (auto& x : f2) {
      for (auto& y : r2) {
        if (x.src_sent_id == y.src_sent_id && x.tgt_sent_id == y.tgt_sent_id) {
          const double avg = (x.prob + y.prob) / 2.0;
          x.prob = avg;
          y.prob = avg;
        }
      }
    }
    EXPECT_EQ(LinksOf(AverageAndThreshold(f2, r2, cfg, "s", "t")), LinksOf(a));
  }
}

}  // namespace
}  // namespace spanalign
