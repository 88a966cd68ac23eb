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

#include "spanalign/baseline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "spanalign/errors.h"

namespace spanalign {

std::string_view BeadTypeName(BeadType type) {
  switch (type) {
    case BeadType::k11: return "1-1";
    case BeadType::k01: return "0-1";
    case BeadType::k10: return "1-0";
    case BeadType::k12: return "1-2";
    case BeadType::k21: return "2-1";
    case BeadType::k22: return "2-2";
  }
  return "?";
}

int BeadSourceCount(BeadType type) {
  switch (type) {
    case BeadType::k01: return 0;
    case BeadType::k11:
    case BeadType::k10:
    case BeadType::k12: return 1;
    case BeadType::k21:
    case BeadType::k22: return 2;
  }
  return 0;
}

int BeadTargetCount(BeadType type) {
  switch (type) {
    case BeadType::k10: return 0;
    case BeadType::k11:
    case BeadType::k01:
    case BeadType::k21: return 1;
    case BeadType::k12:
    case BeadType::k22: return 2;
  }
  return 0;
}

double BeadPenalties::For(BeadType type) const {
  switch (type) {
    case BeadType::k11: return one_one;
    case BeadType::k10: return one_zero;
    case BeadType::k01: return zero_one;
    case BeadType::k12: return one_two;
    case BeadType::k21: return two_one;
    case BeadType::k22: return two_two;
  }
  return 0.0;
}

void BeadPenalties::Validate() const {
  for (double p : {one_one, one_zero, zero_one, one_two, two_one, two_two}) {
    if (!std::isfinite(p) || p < 0.0) {
      Fail(ErrorKind::kConfiguration, "bead penalties must be finite and non-negative");
    }
  }
}

double Avsim(const std::vector<Bead>& beads) {
  double sum = 0.0;
  int count = 0;
  for (const auto& bead : beads) {
    if (bead.src.empty() || bead.tgt.empty()) continue;
    sum += bead.sim;
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

DpAlignment DpAlignWith(int src_sentences, int tgt_sentences, const BeadSimilarity& sim,
                        const BeadPenalties& penalties) {
  penalties.Validate();
  const int n = src_sentences;
  const int m = tgt_sentences;
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  struct Cell {
    double score = kUnreached;
    int bead = -1;
    double sim = 0.0;
  };
  std::vector<Cell> table(static_cast<std::size_t>(n + 1) * (m + 1));
  auto at = [&](int i, int j) -> Cell& { return table[static_cast<std::size_t>(i) * (m + 1) + j]; };
  at(0, 0).score = 0.0;

  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      Cell& cell = at(i, j);
      for (std::size_t b = 0; b < kBeadTypes.size(); ++b) {
        const BeadType type = kBeadTypes[b];
        const int di = BeadSourceCount(type);
        const int dj = BeadTargetCount(type);
        if (di > i || dj > j) continue;
        const Cell& prev = at(i - di, j - dj);
        if (prev.score == kUnreached) continue;
        const double s = (di == 0 || dj == 0)
                             ? 0.0
                             : sim(SentenceRange{i - di, i}, SentenceRange{j - dj, j});
        const double total = prev.score + (s - penalties.For(type));
        if (total > cell.score) {
          cell.score = total;
          cell.bead = static_cast<int>(b);
          cell.sim = s;
        }
      }
    }
  }

  DpAlignment out;
  out.score = at(n, m).score;
  for (int i = n, j = m; i > 0 || j > 0;) {
    const Cell& cell = at(i, j);
    const BeadType type = kBeadTypes[cell.bead];
    const int di = BeadSourceCount(type);
    const int dj = BeadTargetCount(type);
    out.beads.push_back(Bead{SentenceRange{i - di, i}, SentenceRange{j - dj, j}, type, cell.sim});
    i -= di;
    j -= dj;
  }
  std::reverse(out.beads.begin(), out.beads.end());
  out.avsim = Avsim(out.beads);
  for (const auto& bead : out.beads) out.confidences.push_back(out.avsim * bead.sim);
  return out;
}

DpAlignment DpAlign(const Document& src_doc, const Document& tgt_doc,
                    const Dictionary& dict, const BeadPenalties& penalties) {
  if (src_doc.num_sentences() == 0 || tgt_doc.num_sentences() == 0) {
    Fail(ErrorKind::kValidation, "cannot align an empty document (" + src_doc.doc_id() +
                                     " / " + tgt_doc.doc_id() + ")");
  }
  const std::span<const std::string> src_tokens(src_doc.tokens());
  const std::span<const std::string> tgt_tokens(tgt_doc.tokens());
  auto sim = [&](SentenceRange src, SentenceRange tgt) {
    const Span s = src_doc.TokenSpan(src);
    const Span t = tgt_doc.TokenSpan(tgt);
    return LexicalScore(src_tokens.subspan(s.start, s.length()),
                        tgt_tokens.subspan(t.start, t.length()), dict);
  };
  return DpAlignWith(src_doc.num_sentences(), tgt_doc.num_sentences(), sim, penalties);
}

Alignment ToAlignment(const DpAlignment& dp, const Document& src_doc,
                      const Document& tgt_doc) {
  Alignment out{src_doc.doc_id(), tgt_doc.doc_id(), {}};
  for (std::size_t b = 0; b < dp.beads.size(); ++b) {
    const Bead& bead = dp.beads[b];
    out.links.push_back(AlignmentGroup{bead.src.ids(), bead.tgt.ids(), dp.confidences[b]});
  }
  return out;
}

}  // namespace spanalign
