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

#include "spanalign/optimize.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "spanalign/errors.h"

namespace spanalign {

namespace {

using UnitKey = std::pair<SentenceRange, SentenceRange>;

double MaxScore(const std::vector<SentenceUnitCandidate>& units) {
  double best = 0.0;
  for (const auto& u : units) best = std::max(best, u.avg_score);
  return best;
}

std::vector<SpanPairCandidate> Finalize(std::vector<SpanPairCandidate> out) {
  std::stable_sort(out.begin(), out.end(),
                   [](const SpanPairCandidate& a, const SpanPairCandidate& b) {
                     if (a.omega != b.omega) return a.omega > b.omega;
                     return std::tie(a.src, a.tgt) < std::tie(b.src, b.tgt);
                   });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

}  // namespace

CombineWeights ResolveWeights(const std::vector<SentenceUnitCandidate>& fwd,
                              const std::vector<SentenceUnitCandidate>& rev,
                              const CombineConfig& config) {
  if (!std::isfinite(config.c) || config.c < 0.0) {
    Fail(ErrorKind::kConfiguration, "c must be a finite non-negative number");
  }
  CombineWeights weights{config.c, 0.0};
  if (config.c_prime) {
    if (!std::isfinite(*config.c_prime) || *config.c_prime < 0.0) {
      Fail(ErrorKind::kConfiguration, "c' must be a finite non-negative number");
    }
    weights.c_prime = *config.c_prime;
  } else {
    const double max_fwd = MaxScore(fwd);
    const double max_rev = MaxScore(rev);
    if (max_fwd == 0.0 && max_rev == 0.0) {
      Fail(ErrorKind::kDegenerateInput,
           "automatic c' is undefined: both directions have maximum score 0");
    }
    // All reverse scores are zero here, so any finite weight is equivalent.
    weights.c_prime = max_rev == 0.0 ? 1.0 : max_fwd / max_rev;
  }
  if (weights.c == 0.0 && weights.c_prime == 0.0) {
    Fail(ErrorKind::kConfiguration, "c and c' cannot both be zero");
  }
  return weights;
}

std::vector<SpanPairCandidate> CombineScores(
    const std::vector<SentenceUnitCandidate>& fwd,
    const std::vector<SentenceUnitCandidate>& rev, const CombineConfig& config) {
  if (fwd.empty() && rev.empty()) return {};
  const CombineWeights w = ResolveWeights(fwd, rev, config);
  std::map<UnitKey, double> fwd_scores;
  std::map<UnitKey, double> rev_scores;
  for (const auto& u : fwd) fwd_scores.emplace(UnitKey{u.src, u.tgt}, u.avg_score);
  for (const auto& u : rev) rev_scores.emplace(UnitKey{u.src, u.tgt}, u.avg_score);

  std::vector<SpanPairCandidate> out;
  for (const auto& [key, omega] : fwd_scores) {
    auto it = rev_scores.find(key);
    if (it != rev_scores.end()) {
      out.push_back({0, key.first, key.second, w.c * omega + w.c_prime * it->second});
    } else if (config.one_sided == OneSidedPolicy::kKeep) {
      out.push_back({0, key.first, key.second, w.c * omega});
    }
  }
  if (config.one_sided == OneSidedPolicy::kKeep) {
    for (const auto& [key, omega] : rev_scores) {
      if (!fwd_scores.contains(key)) {
        out.push_back({0, key.first, key.second, w.c_prime * omega});
      }
    }
  }
  return Finalize(std::move(out));
}

std::vector<SpanPairCandidate> CandidatesFromUnits(
    const std::vector<SentenceUnitCandidate>& units) {
  std::map<UnitKey, double> scores;
  for (const auto& u : units) scores.emplace(UnitKey{u.src, u.tgt}, u.avg_score);
  std::vector<SpanPairCandidate> out;
  for (const auto& [key, omega] : scores) out.push_back({0, key.first, key.second, omega});
  return Finalize(std::move(out));
}

std::string_view SolveMethodName(SolveMethod method) {
  switch (method) {
    case SolveMethod::kBruteForce: return "bruteforce";
    case SolveMethod::kBranchAndBound: return "branch_and_bound";
    case SolveMethod::kGreedy: return "greedy";
  }
  return "unknown";
}

namespace {

void CheckCandidates(const std::vector<SpanPairCandidate>& candidates,
                     int src_sentences, int tgt_sentences) {
  std::set<int> ids;
  for (const auto& c : candidates) {
    const std::string where = "candidate " + std::to_string(c.id) + ": ";
    if (!ids.insert(c.id).second) Fail(ErrorKind::kValidation, where + "duplicate id");
    if (c.src.empty() || c.src.begin < 0 || c.src.end > src_sentences) {
      Fail(ErrorKind::kValidation, where + "source range out of bounds");
    }
    if (c.tgt.empty() || c.tgt.begin < 0 || c.tgt.end > tgt_sentences) {
      Fail(ErrorKind::kValidation, where + "target range out of bounds");
    }
    if (!std::isfinite(c.omega) || c.omega < 0.0) {
      Fail(ErrorKind::kValidation, where + "score must be finite and non-negative");
    }
  }
}

double SumInIdOrder(const std::vector<SpanPairCandidate>& candidates,
                    std::vector<int>& selected) {
  std::sort(selected.begin(), selected.end());
  std::map<int, double> by_id;
  for (const auto& c : candidates) by_id[c.id] = c.omega;
  double total = 0.0;
  for (int id : selected) total += by_id.at(id);
  return total;
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int Find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void Unite(int a, int b) { parent[Find(a)] = Find(b); }
  std::vector<int> parent;
};

// Depth-first branch and bound over one conflict component. Items are
// branched in descending-Omega order, include before exclude.
class ComponentSolver {
 public:
  ComponentSolver(std::vector<const SpanPairCandidate*> items, int src_sentences,
                  int tgt_sentences)
      : items_(std::move(items)),
        src_used_(src_sentences, 0),
        tgt_used_(tgt_sentences, 0) {
    std::stable_sort(items_.begin(), items_.end(),
                     [](const SpanPairCandidate* a, const SpanPairCandidate* b) {
                       if (a->omega != b->omega) return a->omega > b->omega;
                       return a->id < b->id;
                     });
    share_src_.assign(src_sentences, 0.0);
    share_tgt_.assign(tgt_sentences, 0.0);
  }

  std::vector<int> Solve() {
    Search(0, 0.0);
    return best_ids_;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  bool Fits(const SpanPairCandidate& c) const {
    for (int s = c.src.begin; s < c.src.end; ++s) {
      if (src_used_[s]) return false;
    }
    for (int t = c.tgt.begin; t < c.tgt.end; ++t) {
      if (tgt_used_[t]) return false;
    }
    return true;
  }

  void Mark(const SpanPairCandidate& c, char value) {
    for (int s = c.src.begin; s < c.src.end; ++s) src_used_[s] = value;
    for (int t = c.tgt.begin; t < c.tgt.end; ++t) tgt_used_[t] = value;
  }

  // Admissible bound on what items[from..] can still add: each free sentence
  // ends up in at most one selected pair, so spreading a pair's score evenly
  // over its sentences and taking per-sentence maxima never underestimates.
  double Bound(std::size_t from) {
    double plain = 0.0;
    touched_src_.clear();
    touched_tgt_.clear();
    for (std::size_t i = from; i < items_.size(); ++i) {
      const SpanPairCandidate& c = *items_[i];
      if (!Fits(c)) continue;
      plain += c.omega;
      const double per_src = c.omega / c.src.size();
      const double per_tgt = c.omega / c.tgt.size();
      for (int s = c.src.begin; s < c.src.end; ++s) {
        if (share_src_[s] == 0.0) touched_src_.push_back(s);
        share_src_[s] = std::max(share_src_[s], per_src);
      }
      for (int t = c.tgt.begin; t < c.tgt.end; ++t) {
        if (share_tgt_[t] == 0.0) touched_tgt_.push_back(t);
        share_tgt_[t] = std::max(share_tgt_[t], per_tgt);
      }
    }
    double by_src = 0.0;
    double by_tgt = 0.0;
    for (int s : touched_src_) {
      by_src += share_src_[s];
      share_src_[s] = 0.0;
    }
    for (int t : touched_tgt_) {
      by_tgt += share_tgt_[t];
      share_tgt_[t] = 0.0;
    }
    return std::min({plain, by_src, by_tgt});
  }

  double Tolerance() const { return 1e-12 * std::max(1.0, best_value_); }

  void Offer(double value) {
    std::vector<int> ids = chosen_;
    std::sort(ids.begin(), ids.end());
    const double tol = Tolerance();
    if (!have_best_ || value > best_value_ + tol ||
        (value >= best_value_ - tol && ids < best_ids_)) {
      have_best_ = true;
      best_value_ = value;
      best_ids_ = std::move(ids);
    }
  }

  void Search(std::size_t index, double value) {
    ++nodes_;
    while (index < items_.size() && !Fits(*items_[index])) ++index;
    if (index == items_.size()) {
      Offer(value);
      return;
    }
    if (have_best_ && value + Bound(index) < best_value_ - Tolerance()) return;

    const SpanPairCandidate& c = *items_[index];
    Mark(c, 1);
    chosen_.push_back(c.id);
    Search(index + 1, value + c.omega);
    chosen_.pop_back();
    Mark(c, 0);
    Search(index + 1, value);
  }

  std::vector<const SpanPairCandidate*> items_;
  std::vector<char> src_used_;
  std::vector<char> tgt_used_;
  std::vector<double> share_src_;
  std::vector<double> share_tgt_;
  std::vector<int> touched_src_;
  std::vector<int> touched_tgt_;
  std::vector<int> chosen_;
  std::vector<int> best_ids_;
  double best_value_ = 0.0;
  bool have_best_ = false;
  std::int64_t nodes_ = 0;
};

}  // namespace

SolveReport SolveExact(const std::vector<SpanPairCandidate>& candidates,
                       int src_sentences, int tgt_sentences,
                       const ExactOptions& options) {
  if (static_cast<int>(candidates.size()) > options.cap) {
    Fail(ErrorKind::kSolverCapExceeded,
         std::to_string(candidates.size()) + " candidates exceed the exact-solver cap of " +
             std::to_string(options.cap) +
             "; raise --exact-cap or use --solver greedy");
  }
  CheckCandidates(candidates, src_sentences, tgt_sentences);

  std::vector<const SpanPairCandidate*> active;
  for (const auto& c : candidates) {
    if (c.omega > 0.0) active.push_back(&c);
  }

  // Candidates sharing a sentence on either side belong to one component.
  DisjointSets sets(static_cast<int>(active.size()));
  std::vector<int> src_owner(src_sentences, -1);
  std::vector<int> tgt_owner(tgt_sentences, -1);
  for (int i = 0; i < static_cast<int>(active.size()); ++i) {
    for (int s = active[i]->src.begin; s < active[i]->src.end; ++s) {
      if (src_owner[s] >= 0) sets.Unite(i, src_owner[s]);
      src_owner[s] = i;
    }
    for (int t = active[i]->tgt.begin; t < active[i]->tgt.end; ++t) {
      if (tgt_owner[t] >= 0) sets.Unite(i, tgt_owner[t]);
      tgt_owner[t] = i;
    }
  }
  std::map<int, std::vector<const SpanPairCandidate*>> components;
  for (int i = 0; i < static_cast<int>(active.size()); ++i) {
    components[sets.Find(i)].push_back(active[i]);
  }

  SolveReport report;
  report.method = SolveMethod::kBranchAndBound;
  report.optimal = true;
  for (auto& [root, items] : components) {
    if (items.size() == 1) {
      report.selected.push_back(items.front()->id);
      ++report.nodes_explored;
      continue;
    }
    ComponentSolver solver(std::move(items), src_sentences, tgt_sentences);
    const std::vector<int> ids = solver.Solve();
    report.selected.insert(report.selected.end(), ids.begin(), ids.end());
    report.nodes_explored += solver.nodes();
  }
  report.objective = SumInIdOrder(candidates, report.selected);
  return report;
}

SolveReport SolveGreedy(const std::vector<SpanPairCandidate>& candidates,
                        int src_sentences, int tgt_sentences) {
  CheckCandidates(candidates, src_sentences, tgt_sentences);
  std::vector<const SpanPairCandidate*> order;
  for (const auto& c : candidates) {
    if (c.omega > 0.0) order.push_back(&c);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const SpanPairCandidate* a, const SpanPairCandidate* b) {
                     if (a->omega != b->omega) return a->omega > b->omega;
                     return a->id < b->id;
                   });
  SolveReport report;
  report.method = SolveMethod::kGreedy;
  report.optimal = false;
  // Per-sentence occupancy; a candidate is accepted iff all its sentences are free.
  std::vector<char> src_used(src_sentences, 0);
  std::vector<char> tgt_used(tgt_sentences, 0);
  auto free = [](const std::vector<char>& used, SentenceRange r) {
    return std::none_of(used.begin() + r.begin, used.begin() + r.end, [](char u) { return u; });
  };
  for (const auto* c : order) {
    ++report.nodes_explored;
    if (free(src_used, c->src) && free(tgt_used, c->tgt)) {
      std::fill(src_used.begin() + c->src.begin, src_used.begin() + c->src.end, 1);
      std::fill(tgt_used.begin() + c->tgt.begin, tgt_used.begin() + c->tgt.end, 1);
      report.selected.push_back(c->id);
    }
  }
  report.objective = SumInIdOrder(candidates, report.selected);
  return report;
}

bool IsFeasible(const std::vector<SpanPairCandidate>& candidates,
                const std::vector<int>& selected, int src_sentences,
                int tgt_sentences) {
  std::map<int, const SpanPairCandidate*> by_id;
  for (const auto& c : candidates) by_id[c.id] = &c;
  std::vector<int> src_count(src_sentences, 0);
  std::vector<int> tgt_count(tgt_sentences, 0);
  for (int id : selected) {
    auto it = by_id.find(id);
    if (it == by_id.end()) return false;
    const SpanPairCandidate& c = *it->second;
    if (c.src.begin < 0 || c.src.end > src_sentences) return false;
    if (c.tgt.begin < 0 || c.tgt.end > tgt_sentences) return false;
    for (int s = c.src.begin; s < c.src.end; ++s) {
      if (++src_count[s] > 1) return false;
    }
    for (int t = c.tgt.begin; t < c.tgt.end; ++t) {
      if (++tgt_count[t] > 1) return false;
    }
  }
  return true;
}

Alignment AlignmentFromSelection(const SolveReport& report,
                                 const std::vector<SpanPairCandidate>& candidates,
                                 const Document& src_doc, const Document& tgt_doc,
                                 bool emit_nulls) {
  std::map<int, const SpanPairCandidate*> by_id;
  for (const auto& c : candidates) by_id[c.id] = &c;

  std::vector<const SpanPairCandidate*> chosen;
  for (int id : report.selected) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      Fail(ErrorKind::kContract, "selected id " + std::to_string(id) + " is not a candidate");
    }
    chosen.push_back(it->second);
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const SpanPairCandidate* a, const SpanPairCandidate* b) {
              return std::tie(a->src, a->tgt) < std::tie(b->src, b->tgt);
            });

  Alignment out{src_doc.doc_id(), tgt_doc.doc_id(), {}};
  std::vector<char> src_covered(src_doc.num_sentences(), 0);
  std::vector<char> tgt_covered(tgt_doc.num_sentences(), 0);
  for (const auto* c : chosen) {
    out.links.push_back(AlignmentGroup{c->src.ids(), c->tgt.ids(), c->omega});
    for (int s = c->src.begin; s < c->src.end; ++s) src_covered[s] = 1;
    for (int t = c->tgt.begin; t < c->tgt.end; ++t) tgt_covered[t] = 1;
  }
  if (emit_nulls) {
    for (int s = 0; s < src_doc.num_sentences(); ++s) {
      if (!src_covered[s]) out.links.push_back(AlignmentGroup{{s}, {}, std::nullopt});
    }
    for (int t = 0; t < tgt_doc.num_sentences(); ++t) {
      if (!tgt_covered[t]) out.links.push_back(AlignmentGroup{{}, {t}, std::nullopt});
    }
  }
  ValidateAlignment(out, AlignmentCheck::kStrict, &src_doc, &tgt_doc);
  return out;
}

std::string SerializeReport(const SolveReport& report, const std::string& src_doc_id,
                            const std::string& tgt_doc_id) {
  nlohmann::ordered_json node;
  node["src_doc_id"] = src_doc_id;
  node["tgt_doc_id"] = tgt_doc_id;
  node["objective"] = report.objective;
  node["selected"] = report.selected;
  node["method"] = SolveMethodName(report.method);
  node["optimal"] = report.optimal;
  node["nodes_explored"] = report.nodes_explored;
  return node.dump();
}

}  // namespace spanalign
