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

#include "spanalign/synth.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>

#include <nlohmann/json.hpp>

#include "spanalign/errors.h"
#include "spanalign/random.h"
#include "spanalign/utf8.h"

namespace spanalign {

ParallelCorpus ParallelCorpus::Reversed() const {
  ParallelCorpus out;
  out.src_no_space = tgt_no_space;
  out.tgt_no_space = src_no_space;
  out.pairs.reserve(pairs.size());
  for (const auto& p : pairs) out.pairs.push_back(ParallelPair{p.tgt, p.src, p.doc});
  return out;
}

ParallelCorpus ParallelCorpusFromDocuments(const std::vector<Document>& src_docs,
                                           const std::vector<Document>& tgt_docs) {
  if (src_docs.size() != tgt_docs.size()) {
    Fail(ErrorKind::kValidation, "source and target corpora hold different document counts");
  }
  ParallelCorpus corpus;
  if (!src_docs.empty()) {
    corpus.src_no_space = src_docs.front().no_space();
    corpus.tgt_no_space = tgt_docs.front().no_space();
  }
  for (std::size_t d = 0; d < src_docs.size(); ++d) {
    const Document& src = src_docs[d];
    const Document& tgt = tgt_docs[d];
    if (src.num_sentences() != tgt.num_sentences()) {
      Fail(ErrorKind::kValidation, "documents " + src.doc_id() + " / " + tgt.doc_id() +
                                       " are not sentence-parallel");
    }
    for (int s = 0; s < src.num_sentences(); ++s) {
      const Sentence& a = src.sentences()[s];
      const Sentence& b = tgt.sentences()[s];
      corpus.pairs.push_back(ParallelPair{{a.text, a.tokens}, {b.text, b.tokens},
                                          static_cast<int>(d)});
    }
  }
  return corpus;
}

ParallelCorpus ParallelCorpusFromAlignments(const std::vector<Document>& src_docs,
                                            const std::vector<Document>& tgt_docs,
                                            const std::vector<Alignment>& gold) {
  ParallelCorpus corpus;
  if (!src_docs.empty()) corpus.src_no_space = src_docs.front().no_space();
  if (!tgt_docs.empty()) corpus.tgt_no_space = tgt_docs.front().no_space();
  for (std::size_t d = 0; d < gold.size(); ++d) {
    const Alignment& alignment = gold[d];
    const Document* src = FindDocument(src_docs, alignment.src_doc_id);
    const Document* tgt = FindDocument(tgt_docs, alignment.tgt_doc_id);
    if (src == nullptr || tgt == nullptr) {
      Fail(ErrorKind::kReference, "alignment " + alignment.src_doc_id + " -> " +
                                      alignment.tgt_doc_id + " names an unknown document");
    }
    ValidateAlignment(alignment, AlignmentCheck::kRelaxed, src, tgt);
    std::vector<std::pair<int, int>> links;
    for (const auto& group : alignment.links) {
      if (group.src.size() == 1 && group.tgt.size() == 1) {
        links.emplace_back(group.src.front(), group.tgt.front());
      }
    }
    std::sort(links.begin(), links.end());
    for (const auto& [s, t] : links) {
      const Sentence& a = src->sentences()[s];
      const Sentence& b = tgt->sentences()[t];
      corpus.pairs.push_back(ParallelPair{{a.text, a.tokens}, {b.text, b.tokens},
                                          static_cast<int>(d)});
    }
  }
  return corpus;
}

void SynthConfig::Validate() const {
  if (num_negatives < 0) Fail(ErrorKind::kConfiguration, "negative count must be >= 0");
  if (max_query_tokens <= 0 || max_context_tokens <= 0) {
    Fail(ErrorKind::kConfiguration, "token limits must be positive");
  }
  if (!(null_cap >= 0.0 && null_cap <= 1.0)) {
    Fail(ErrorKind::kConfiguration, "null cap must lie in [0, 1]");
  }
}

namespace {

struct ContextBuilder {
  std::string_view separator;
  std::string text;
  long length = 0;  // code points
  int sentences = 0;
  int tokens = 0;

  // Appends and returns the code-point offset of the new sentence.
  long Append(const ParallelSentence& s) {
    if (sentences > 0) {
      text += separator;
      length += static_cast<long>(utf8::Length(separator));
    }
    const long start = length;
    text += s.text;
    length += static_cast<long>(utf8::Length(s.text));
    tokens += static_cast<int>(s.tokens.size());
    ++sentences;
    return start;
  }
};

std::string Qid(const SynthConfig& config, std::string_view index) {
  return config.corpus_name + ":" + std::string(index) + ":" + config.direction;
}

// U distinct pair indices other than `self` whose target text differs from
// the answer; empty when the corpus cannot supply that many.
std::vector<std::size_t> DrawRandomNegatives(const ParallelCorpus& corpus, std::size_t self,
                                             int count, StreamRng& rng) {
  const std::size_t k = corpus.pairs.size();
  const std::string& answer = corpus.pairs[self].tgt.text;
  auto eligible = [&](std::size_t j) {
    return j != self && corpus.pairs[j].tgt.text != answer;
  };
  std::vector<std::size_t> chosen;
  std::set<std::size_t> seen;
  const int max_attempts = 64 * (count + 1);
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(chosen.size()) < count;
       ++attempt) {
    const std::size_t j = rng.Below(k);
    if (eligible(j) && seen.insert(j).second) chosen.push_back(j);
  }
  if (static_cast<int>(chosen.size()) == count) return chosen;

  // Heavily duplicated corpora: sample from the explicit pool instead.
  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < k; ++j) {
    if (eligible(j) && !seen.contains(j)) pool.push_back(j);
  }
  while (static_cast<int>(chosen.size()) < count && !pool.empty()) {
    const std::size_t pick = rng.Below(pool.size());
    chosen.push_back(pool[pick]);
    pool[pick] = pool.back();
    pool.pop_back();
  }
  if (static_cast<int>(chosen.size()) < count) chosen.clear();
  return chosen;
}

}  // namespace

std::vector<SquadRecord> Synthesize(const ParallelCorpus& corpus, const SynthConfig& config) {
  config.Validate();
  const std::size_t k = corpus.pairs.size();
  if (k == 0) Fail(ErrorKind::kConfiguration, "cannot synthesize from an empty corpus");
  const int negatives = config.num_negatives;
  if (config.mode == SamplingMode::kRandom && static_cast<std::size_t>(negatives) >= k) {
    Fail(ErrorKind::kConfiguration, "random sampling needs more pairs than negatives (U < K)");
  }

  // Document extents for contextual sampling.
  std::vector<std::size_t> doc_begin(k);
  std::vector<std::size_t> doc_end(k);
  for (std::size_t i = 0; i < k;) {
    std::size_t j = i;
    while (j < k && corpus.pairs[j].doc == corpus.pairs[i].doc) ++j;
    for (std::size_t t = i; t < j; ++t) {
      doc_begin[t] = i;
      doc_end[t] = j;
    }
    i = j;
  }

  std::vector<SquadRecord> out;
  for (std::size_t idx = 0; idx < k; ++idx) {
    const ParallelPair& pair = corpus.pairs[idx];
    if (static_cast<int>(pair.src.tokens.size()) > config.max_query_tokens ||
        static_cast<int>(pair.tgt.tokens.size()) > config.max_query_tokens) {
      continue;
    }
    StreamRng rng(config.seed, idx);
    const int u = static_cast<int>(rng.Below(static_cast<std::uint64_t>(negatives) + 1));

    std::vector<std::size_t> before;
    std::vector<std::size_t> after;
    if (config.mode == SamplingMode::kRandom) {
      const auto drawn = DrawRandomNegatives(corpus, idx, negatives, rng);
      if (static_cast<int>(drawn.size()) != negatives) continue;
      before.assign(drawn.begin(), drawn.begin() + u);
      after.assign(drawn.begin() + u, drawn.end());
    } else {
      const std::size_t first = doc_begin[idx];
      const std::size_t last = doc_end[idx];
      if (last - first < static_cast<std::size_t>(negatives) + 1) continue;
      std::size_t want_before = u;
      std::size_t want_after = negatives - u;
      const std::size_t have_before = idx - first;
      const std::size_t have_after = last - idx - 1;
      if (want_before > have_before) {
        want_after += want_before - have_before;
        want_before = have_before;
      }
      if (want_after > have_after) {
        want_before += want_after - have_after;
        want_after = have_after;
      }
      for (std::size_t j = idx - want_before; j < idx; ++j) before.push_back(j);
      for (std::size_t j = idx + 1; j <= idx + want_after; ++j) after.push_back(j);
    }

    ContextBuilder context;
    context.separator = corpus.tgt_no_space ? "" : " ";
    for (std::size_t j : before) context.Append(corpus.pairs[j].tgt);
    const long answer_start = context.Append(pair.tgt);
    for (std::size_t j : after) context.Append(corpus.pairs[j].tgt);
    if (context.tokens > config.max_context_tokens) continue;

    SquadRecord record;
    record.qid = Qid(config, std::to_string(idx));
    record.question = pair.src.text;
    record.context = std::move(context.text);
    record.answer_text = pair.tgt.text;
    record.answer_start = answer_start;
    record.answer_position = static_cast<int>(before.size());
    record.context_sentences = context.sentences;
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<SquadRecord> SynthesizeNullExamples(const std::vector<AlignedDocumentPair>& docs,
                                                const SynthConfig& config) {
  config.Validate();
  if (config.version != SquadVersion::kV20) {
    Fail(ErrorKind::kConfiguration, "no-answer records need SQuAD v2.0 output");
  }
  std::vector<SquadRecord> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const Document& src = *docs[d].src;
    const Document& tgt = *docs[d].tgt;
    const Alignment& gold = *docs[d].gold;
    if (gold.src_doc_id != src.doc_id() || gold.tgt_doc_id != tgt.doc_id()) {
      Fail(ErrorKind::kReference, "gold alignment does not match " + src.doc_id() + " / " +
                                      tgt.doc_id());
    }
    const auto cap = static_cast<std::size_t>(
        std::floor(config.null_cap * src.num_sentences() + 1e-9));
    if (cap == 0 || tgt.num_sentences() == 0) continue;
    if (tgt.num_tokens() > config.max_context_tokens) continue;

    // Candidate queries as (document, sentence).
    std::vector<std::pair<const Document*, int>> pool;
    if (config.null_sampling == NullSampling::kUnaligned) {
      std::set<int> aligned;
      for (const auto& g : gold.links) {
        if (!g.tgt.empty()) aligned.insert(g.src.begin(), g.src.end());
      }
      for (int s = 0; s < src.num_sentences(); ++s) {
        if (!aligned.contains(s)) pool.emplace_back(&src, s);
      }
    } else {
      for (std::size_t o = 0; o < docs.size(); ++o) {
        if (o == d) continue;
        for (int s = 0; s < docs[o].src->num_sentences(); ++s) {
          pool.emplace_back(docs[o].src, s);
        }
      }
    }

    StreamRng rng(config.seed ^ 0x6E756C6CULL, d);
    std::vector<std::pair<const Document*, int>> picked;
    while (picked.size() < cap && !pool.empty()) {
      const std::size_t at = rng.Below(pool.size());
      picked.push_back(pool[at]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
    }

    const std::string context = tgt.Join(SentenceRange{0, tgt.num_sentences()});
    for (const auto& [doc, s] : picked) {
      const Sentence& sentence = doc->sentences()[s];
      if (static_cast<int>(sentence.tokens.size()) > config.max_query_tokens) continue;
      SquadRecord record;
      record.qid = Qid(config, "null/" + src.doc_id() + "/" + doc->doc_id() + "/" +
                                   std::to_string(s));
      record.question = sentence.text;
      record.context = context;
      record.is_impossible = true;
      record.answer_start = -1;
      record.context_sentences = tgt.num_sentences();
      out.push_back(std::move(record));
    }
  }
  return out;
}

std::string SerializeSquad(const std::vector<SquadRecord>& records, const SynthConfig& config) {
  using json = nlohmann::ordered_json;
  const bool v2 = config.version == SquadVersion::kV20;
  json paragraphs = json::array();
  for (const auto& record : records) {
    if (record.is_impossible && !v2) {
      Fail(ErrorKind::kConfiguration, "SQuAD v1.1 cannot express no-answer records");
    }
    json qa;
    qa["id"] = record.qid;
    qa["question"] = record.question;
    qa["answers"] = json::array();
    if (!record.is_impossible) {
      qa["answers"].push_back(json{{"text", record.answer_text},
                                   {"answer_start", record.answer_start}});
    }
    if (v2) qa["is_impossible"] = record.is_impossible;
    if (!paragraphs.empty() && paragraphs.back()["context"] == record.context) {
      paragraphs.back()["qas"].push_back(std::move(qa));
    } else {
      paragraphs.push_back(json{{"context", record.context}, {"qas", json::array({qa})}});
    }
  }
  json root;
  root["version"] = v2 ? "v2.0" : "v1.1";
  root["data"] = json::array({json{{"title", config.corpus_name}, {"paragraphs", paragraphs}}});
  return root.dump() + "\n";
}

}  // namespace spanalign
