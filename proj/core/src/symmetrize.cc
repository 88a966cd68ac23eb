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

#include "spanalign/symmetrize.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

#include "spanalign/errors.h"

namespace spanalign {

std::vector<DirectedSentenceScore> DirectedScores(
    const std::vector<PredictionRecord>& records, const Document& querying_doc,
    const Document& answered_doc, Direction direction) {
  std::map<std::pair<int, int>, double> best;
  for (const auto& record : records) {
    if (!record.ruled || record.has_null_slot) {
      Fail(ErrorKind::kContract,
           "record '" + record.qid + "' must be null-ruled before symmetrization");
    }
    if (record.query_doc_id != querying_doc.doc_id() ||
        record.target_doc_id != answered_doc.doc_id()) {
      Fail(ErrorKind::kReference, "record '" + record.qid + "' refers to " +
                                      record.query_doc_id + " -> " + record.target_doc_id);
    }
    const SpanPrediction* top = record.best();
    if (!top) continue;
    const auto queried = SpanToSentenceCover(querying_doc, record.query_span);
    const auto answered = SpanToSentenceCover(answered_doc, top->span);
    for (int q : queried) {
      for (int a : answered) {
        const auto key = direction == Direction::kSrcToTgt ? std::pair{q, a}
                                                           : std::pair{a, q};
        auto [it, inserted] = best.emplace(key, top->score);
        if (!inserted) it->second = std::max(it->second, top->score);
      }
    }
  }
  std::vector<DirectedSentenceScore> out;
  out.reserve(best.size());
  for (const auto& [key, prob] : best) {
    out.push_back(DirectedSentenceScore{key.first, key.second, prob, direction});
  }
  return out;
}

namespace {

struct Components {
  std::map<int, int> parent;
  int Find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent.emplace(x, x);
      return x;
    }
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void Unite(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Alignment AverageAndThreshold(const std::vector<DirectedSentenceScore>& fwd,
                              const std::vector<DirectedSentenceScore>& rev,
                              const SymConfig& config, const std::string& src_doc_id,
                              const std::string& tgt_doc_id) {
  if (!(config.theta >= 0.0 && config.theta <= 1.0)) {
    Fail(ErrorKind::kConfiguration, "theta must lie in [0, 1]");
  }
  std::map<std::pair<int, int>, std::pair<std::optional<double>, std::optional<double>>> pairs;
  auto keep_max = [](std::optional<double>& slot, double p) {
    slot = slot ? std::max(*slot, p) : p;
  };
  for (const auto& s : fwd) keep_max(pairs[{s.src_sent_id, s.tgt_sent_id}].first, s.prob);
  for (const auto& s : rev) keep_max(pairs[{s.src_sent_id, s.tgt_sent_id}].second, s.prob);

  // Source sentence s is node 2s, target sentence t is node 2t + 1.
  Components components;
  std::vector<std::pair<std::pair<int, int>, double>> kept;
  for (const auto& [key, probs] : pairs) {
    const auto& [pf, pr] = probs;
    double avg = 0.0;
    if (pf && pr) {
      avg = (*pf + *pr) / 2.0;
    } else if (config.missing == MissingDirectionPolicy::kHalf) {
      avg = (pf ? *pf : *pr) / 2.0;
    } else {
      continue;
    }
    if (!(avg > config.theta)) continue;
    kept.push_back({key, avg});
    components.Unite(2 * key.first, 2 * key.second + 1);
  }

  std::map<int, AlignmentGroup> groups;
  for (const auto& [key, avg] : kept) {
    AlignmentGroup& g = groups[components.Find(2 * key.first)];
    g.src.push_back(key.first);
    g.tgt.push_back(key.second);
    g.score = g.score ? std::max(*g.score, avg) : avg;
  }
  Alignment out{src_doc_id, tgt_doc_id, {}};
  for (auto& [root, group] : groups) {
    for (auto* ids : {&group.src, &group.tgt}) {
      std::sort(ids->begin(), ids->end());
      ids->erase(std::unique(ids->begin(), ids->end()), ids->end());
    }
    out.links.push_back(std::move(group));
  }
  std::sort(out.links.begin(), out.links.end(),
            [](const AlignmentGroup& a, const AlignmentGroup& b) {
              return std::tie(a.src.front(), a.tgt.front()) <
                     std::tie(b.src.front(), b.tgt.front());
            });
  return out;
}

}  // namespace spanalign
