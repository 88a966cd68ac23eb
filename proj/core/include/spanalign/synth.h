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

#ifndef SPANALIGN_SYNTH_H_
#define SPANALIGN_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "spanalign/corpus.h"

namespace spanalign {

struct ParallelSentence {
  std::string text;
  std::vector<std::string> tokens;
};

struct ParallelPair {
  ParallelSentence src;
  ParallelSentence tgt;
  int doc = 0;  // source document index, for contextual sampling
};

// Clean sentence-parallel corpus in document order.
struct ParallelCorpus {
  std::vector<ParallelPair> pairs;
  bool src_no_space = false;
  bool tgt_no_space = false;

  ParallelCorpus Reversed() const;
};

// Pairs the i-th sentence of each source document with the i-th sentence of
// the matching target document; documents must have equal sentence counts.
ParallelCorpus ParallelCorpusFromDocuments(const std::vector<Document>& src_docs,
                                           const std::vector<Document>& tgt_docs);

// Pairs drawn from the one-to-one groups of each gold alignment, in source
// order. Alignments are matched to documents by id.
ParallelCorpus ParallelCorpusFromAlignments(const std::vector<Document>& src_docs,
                                            const std::vector<Document>& tgt_docs,
                                            const std::vector<Alignment>& gold);

enum class SamplingMode {
  // Negatives drawn uniformly from other pairs' target sentences.
  kRandom,
  // Negatives are the answer's neighbours in its own document.
  kContextual,
};

enum class SquadVersion { kV11, kV20 };

enum class NullSampling {
  // Unaligned source sentences queried against their own document.
  kUnaligned,
  // Sentences from other source documents, never in the context.
  kForeign,
};

struct SynthConfig {
  int num_negatives = 9;
  SamplingMode mode = SamplingMode::kRandom;
  std::uint64_t seed = 0;
  int max_query_tokens = 100;
  int max_context_tokens = 1000;
  SquadVersion version = SquadVersion::kV11;
  std::string corpus_name = "corpus";
  std::string direction = "src-tgt";
  double null_cap = 0.10;
  NullSampling null_sampling = NullSampling::kUnaligned;

  void Validate() const;
};

struct SquadRecord {
  std::string qid;
  std::string question;
  std::string context;
  std::string answer_text;
  long answer_start = -1;  // code points into context; -1 when impossible
  bool is_impossible = false;
  // Not serialized: where the answer sits among the context sentences, and
  // how many sentences the context holds.
  int answer_position = -1;
  int context_sentences = 0;
};

// One record per surviving pair, in pair order. The answer sits after u
// negatives and before U - u, with u uniform on {0..U} from a stream keyed by
// (seed, pair index). Pairs whose query or answer exceeds max_query_tokens,
// or whose context exceeds max_context_tokens, are dropped.
std::vector<SquadRecord> Synthesize(const ParallelCorpus& corpus, const SynthConfig& config);

struct AlignedDocumentPair {
  const Document* src = nullptr;
  const Document* tgt = nullptr;
  const Alignment* gold = nullptr;
};

// SQuAD v2.0 no-answer records: the whole target document is the context,
// and at most floor(null_cap * source sentences) queries per document pair
// are sampled per `null_sampling`.
std::vector<SquadRecord> SynthesizeNullExamples(const std::vector<AlignedDocumentPair>& docs,
                                                const SynthConfig& config);

// Standard SQuAD layout: {version, data: [{title, paragraphs: [{context,
// qas: [{id, question, answers: [{text, answer_start}], is_impossible?}]}]}]}.
std::string SerializeSquad(const std::vector<SquadRecord>& records, const SynthConfig& config);

}  // namespace spanalign

#endif  // SPANALIGN_SYNTH_H_
