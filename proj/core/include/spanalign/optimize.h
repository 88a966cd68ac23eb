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

#ifndef SPANALIGN_OPTIMIZE_H_
#define SPANALIGN_OPTIMIZE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/snap.h"

namespace spanalign {

// A sentence-level span pair d_ijkl with its combined score.
struct SpanPairCandidate {
  int id = 0;
  SentenceRange src;
  SentenceRange tgt;
  double omega = 0.0;

  friend bool operator==(const SpanPairCandidate&, const SpanPairCandidate&) = default;
};

enum class OneSidedPolicy { kKeep, kDrop };

struct CombineConfig {
  double c = 1.0;
  // Fixed reverse weight; nullopt means max(fwd) / max(rev).
  std::optional<double> c_prime = std::nullopt;
  OneSidedPolicy one_sided = OneSidedPolicy::kKeep;
};

// Resolved weights actually used by CombineScores.
struct CombineWeights {
  double c = 0.0;
  double c_prime = 0.0;
};

CombineWeights ResolveWeights(const std::vector<SentenceUnitCandidate>& fwd,
                              const std::vector<SentenceUnitCandidate>& rev,
                              const CombineConfig& config);

// Omega = c * fwd + c' * rev for units present in both lists (matched on
// exact ranges); one-sided units keep their single weighted term or are
// dropped. `rev` must already be in forward orientation. Ids are assigned in
// order of descending Omega, ties by (src, tgt).
std::vector<SpanPairCandidate> CombineScores(
    const std::vector<SentenceUnitCandidate>& fwd,
    const std::vector<SentenceUnitCandidate>& rev, const CombineConfig& config);

// Forward-only candidates (Omega = avg_score), ordered as CombineScores does.
std::vector<SpanPairCandidate> CandidatesFromUnits(
    const std::vector<SentenceUnitCandidate>& units);

enum class SolveMethod { kBruteForce, kBranchAndBound, kGreedy };
std::string_view SolveMethodName(SolveMethod method);

struct SolveReport {
  double objective = 0.0;
  std::vector<int> selected;  // ascending candidate ids
  SolveMethod method = SolveMethod::kBranchAndBound;
  bool optimal = false;
  std::int64_t nodes_explored = 0;
};

struct ExactOptions {
  int cap = 200;
};

// Maximum-Omega subset in which every source sentence and every target
// sentence is covered at most once. Among optimal subsets the smallest sorted
// id list (lexicographically) wins. Candidates with Omega == 0 are never
// selected. Independent conflict components are solved separately by
// best-first branch and bound; the bound is the smaller of the remaining
// Omega sum and a per-sentence packing bound on either side.
SolveReport SolveExact(const std::vector<SpanPairCandidate>& candidates,
                       int src_sentences, int tgt_sentences,
                       const ExactOptions& options = {});

// Accepts candidates by descending Omega (ties by id) when they conflict with
// nothing accepted so far.
SolveReport SolveGreedy(const std::vector<SpanPairCandidate>& candidates,
                        int src_sentences, int tgt_sentences);

// True when no sentence on either side is covered twice by `selected`.
bool IsFeasible(const std::vector<SpanPairCandidate>& candidates,
                const std::vector<int>& selected, int src_sentences,
                int tgt_sentences);

// One group per selected candidate (score = Omega); with `emit_nulls`, every
// uncovered sentence also gets a single-sided group.
Alignment AlignmentFromSelection(const SolveReport& report,
                                 const std::vector<SpanPairCandidate>& candidates,
                                 const Document& src_doc, const Document& tgt_doc,
                                 bool emit_nulls);

std::string SerializeReport(const SolveReport& report, const std::string& src_doc_id,
                            const std::string& tgt_doc_id);

}  // namespace spanalign

#endif  // SPANALIGN_OPTIMIZE_H_
