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

#include "spanalign/fixture.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "spanalign/errors.h"
#include "spanalign/random.h"

namespace spanalign {

namespace {

struct Unit {
  int group = -1;  // -1 for an unaligned sentence
  std::vector<SentenceInput> sentences;
};

SentenceInput MakeSentence(std::vector<std::string> tokens, bool no_space) {
  SentenceInput s;
  s.text = Detokenize(tokens, no_space);
  s.tokens = std::move(tokens);
  return s;
}

// Splits `tokens` into `parts` non-empty pieces.
std::vector<std::vector<std::string>> Split(const std::vector<std::string>& tokens, int parts,
                                            StreamRng& rng) {
  std::vector<std::vector<std::string>> out(parts);
  const std::size_t cut = parts == 1 ? tokens.size() : 1 + rng.Below(tokens.size() - 1);
  for (std::size_t i = 0; i < tokens.size(); ++i) out[parts == 1 || i < cut ? 0 : 1].push_back(tokens[i]);
  return out;
}

// Inserts unaligned units at random positions, then numbers sentences.
std::vector<Unit> Interleave(std::vector<Unit> aligned, std::vector<Unit> unaligned,
                             StreamRng& rng) {
  for (auto& u : unaligned) {
    const std::size_t at = rng.Below(aligned.size() + 1);
    aligned.insert(aligned.begin() + static_cast<std::ptrdiff_t>(at), std::move(u));
  }
  return aligned;
}

}  // namespace

BitextFixture GenerateFixture(const FixtureConfig& config) {
  if (config.num_docs < 0 || config.min_groups < 1 || config.max_groups < config.min_groups ||
      config.min_tokens < 2 || config.max_tokens < config.min_tokens) {
    Fail(ErrorKind::kConfiguration, "invalid fixture configuration");
  }
  BitextFixture fx;
  int next_word = 0;
  int next_noise = 0;
  for (int d = 0; d < config.num_docs; ++d) {
    StreamRng rng(config.seed, static_cast<std::uint64_t>(d));
    const int groups = config.min_groups +
                       static_cast<int>(rng.Below(config.max_groups - config.min_groups + 1));
    auto length = [&] {
      return config.min_tokens +
             static_cast<int>(rng.Below(config.max_tokens - config.min_tokens + 1));
    };

    std::vector<Unit> src_units;
    std::vector<Unit> tgt_units;
    for (int g = 0; g < groups; ++g) {
      const int src_parts = rng.Unit() < config.multi_sentence_rate ? 2 : 1;
      const int tgt_parts = rng.Unit() < config.multi_sentence_rate ? 2 : 1;
      const int n = std::max(length(), 2);
      std::vector<std::string> src_words;
      std::vector<std::string> tgt_words;
      for (int w = 0; w < n; ++w) {
        const std::string id = std::to_string(next_word++);
        src_words.push_back("w" + id);
        tgt_words.push_back("T" + id + "|");
        fx.dictionary.Add(src_words.back(), tgt_words.back());
      }
      // Target word order is rotated so alignment is not trivially positional.
      std::rotate(tgt_words.begin(), tgt_words.begin() + rng.Below(n), tgt_words.end());
      Unit su{g, {}};
      Unit tu{g, {}};
      for (auto& part : Split(src_words, src_parts, rng)) su.sentences.push_back(MakeSentence(part, false));
      for (auto& part : Split(tgt_words, tgt_parts, rng)) tu.sentences.push_back(MakeSentence(part, true));
      src_units.push_back(std::move(su));
      tgt_units.push_back(std::move(tu));
    }
    if (config.shuffle_target) {
      for (std::size_t i = tgt_units.size(); i > 1; --i) {
        std::swap(tgt_units[i - 1], tgt_units[rng.Below(i)]);
      }
    }

    const int nulls =
        config.null_ratio > 0.0
            ? std::max(1, static_cast<int>(std::ceil(config.null_ratio * groups)))
            : 0;
    auto noise_units = [&](bool no_space, const char* prefix) {
      std::vector<Unit> units;
      for (int k = 0; k < nulls; ++k) {
        std::vector<std::string> words;
        const int n = length();
        for (int w = 0; w < n; ++w) {
          words.push_back(std::string(prefix) + std::to_string(next_noise++) + (no_space ? "|" : ""));
        }
        units.push_back(Unit{-1, {MakeSentence(words, no_space)}});
      }
      return units;
    };
    src_units = Interleave(std::move(src_units), noise_units(false, "x"), rng);
    tgt_units = Interleave(std::move(tgt_units), noise_units(true, "X"), rng);

    Alignment gold;
    gold.src_doc_id = "src-" + std::to_string(d);
    gold.tgt_doc_id = "tgt-" + std::to_string(d);
    std::vector<std::vector<int>> src_ids(groups);
    std::vector<std::vector<int>> tgt_ids(groups);
    std::vector<SentenceInput> src_sentences;
    std::vector<SentenceInput> tgt_sentences;
    std::vector<int> src_null;
    std::vector<int> tgt_null;
    for (auto& unit : src_units) {
      for (auto& s : unit.sentences) {
        const int id = static_cast<int>(src_sentences.size());
        (unit.group >= 0 ? src_ids[unit.group] : src_null).push_back(id);
        src_sentences.push_back(std::move(s));
      }
    }
    for (auto& unit : tgt_units) {
      for (auto& s : unit.sentences) {
        const int id = static_cast<int>(tgt_sentences.size());
        (unit.group >= 0 ? tgt_ids[unit.group] : tgt_null).push_back(id);
        tgt_sentences.push_back(std::move(s));
      }
    }
    for (int g = 0; g < groups; ++g) {
      gold.links.push_back(AlignmentGroup{src_ids[g], tgt_ids[g], std::nullopt});
    }
    for (int s : src_null) gold.links.push_back(AlignmentGroup{{s}, {}, std::nullopt});
    for (int t : tgt_null) gold.links.push_back(AlignmentGroup{{}, {t}, std::nullopt});
    std::sort(gold.links.begin(), gold.links.end(),
              [](const AlignmentGroup& a, const AlignmentGroup& b) {
                const int ka = a.src.empty() ? 1 << 30 : a.src.front();
                const int kb = b.src.empty() ? 1 << 30 : b.src.front();
                if (ka != kb) return ka < kb;
                return a.tgt < b.tgt;
              });

    fx.src_docs.push_back(Document::Create(gold.src_doc_id, "en", false, std::move(src_sentences)));
    fx.tgt_docs.push_back(Document::Create(gold.tgt_doc_id, "ja", true, std::move(tgt_sentences)));
    ValidateAlignment(gold, AlignmentCheck::kStrict, &fx.src_docs.back(), &fx.tgt_docs.back());
    fx.gold.push_back(std::move(gold));
  }
  return fx;
}

}  // namespace spanalign
