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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "parallel.h"
#include "spanalign/baseline.h"
#include "spanalign/corpus.h"
#include "spanalign/dictionary.h"
#include "spanalign/errors.h"
#include "spanalign/eval.h"
#include "spanalign/fixture.h"
#include "spanalign/io.h"
#include "spanalign/optimize.h"
#include "spanalign/predict.h"
#include "spanalign/prediction_io.h"
#include "spanalign/scorers.h"
#include "spanalign/snap.h"
#include "spanalign/symmetrize.h"
#include "spanalign/synth.h"

#ifndef SPANALIGN_VERSION
#define SPANALIGN_VERSION "unknown"
#endif
#ifndef SPANALIGN_BUILD_TYPE
#define SPANALIGN_BUILD_TYPE ""
#endif
#ifndef SPANALIGN_COMPILER
#define SPANALIGN_COMPILER ""
#endif

namespace spanalign::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string log_level = "warn";
  std::string out_dir = ".";
};

class Context {
 public:
  Context(const GlobalOptions& global, std::ostream& out,
          std::shared_ptr<spdlog::logger> log)
      : global_(global), out_(out), log_(std::move(log)) {}

  const GlobalOptions& global() const { return global_; }
  std::ostream& out() const { return out_; }
  spdlog::logger& log() const { return *log_; }

  // Resolves an output path against the output directory; the result never
  // escapes it.
  std::string Output(const std::string& name) const {
    const fs::path root = fs::absolute(global_.out_dir).lexically_normal();
    fs::path path = fs::path(name);
    if (path.is_relative()) path = root / path;
    path = path.lexically_normal();
    const fs::path rel = path.lexically_relative(root);
    if (rel.empty() || *rel.begin() == "..") {
      Fail(ErrorKind::kConfiguration,
           "output '" + name + "' lies outside the output directory " + root.string());
    }
    return path.string();
  }

  void Write(const std::string& name, std::string_view content) const {
    const std::string path = Output(name);
    WriteFileAtomically(path, content);
    log_->info("wrote {}", path);
  }

 private:
  GlobalOptions global_;
  std::ostream& out_;
  std::shared_ptr<spdlog::logger> log_;
};

void RequireInputs(std::initializer_list<const std::string*> paths) {
  for (const std::string* path : paths) {
    if (path == nullptr || path->empty()) continue;
    std::error_code ec;
    if (!fs::is_regular_file(*path, ec)) {
      Fail(ErrorKind::kIo, *path + ": no such file");
    }
  }
}

void RequireSet(const std::string& value, std::string_view flag) {
  if (value.empty()) Fail(ErrorKind::kConfiguration, std::string(flag) + " is required");
}

double ParseNumber(const std::string& text, std::string_view what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(ErrorKind::kConfiguration, fmt::format("{}: '{}' is not a number", what, text));
  }
  return value;
}

// Enumerated flag values.

const std::map<std::string, SamplingMode> kSamplingModes = {
    {"random", SamplingMode::kRandom}, {"contextual", SamplingMode::kContextual}};
const std::map<std::string, SquadVersion> kSquadVersions = {
    {"1.1", SquadVersion::kV11}, {"2.0", SquadVersion::kV20}};
const std::map<std::string, NullSampling> kNullSamplings = {
    {"unaligned", NullSampling::kUnaligned}, {"foreign", NullSampling::kForeign}};
const std::map<std::string, BoundaryRule> kBoundaryRules = {
    {"nearest", BoundaryRule::kNearest},
    {"contain", BoundaryRule::kContain},
    {"cover", BoundaryRule::kCover}};
const std::map<std::string, OneSidedPolicy> kOneSidedPolicies = {
    {"keep", OneSidedPolicy::kKeep}, {"drop", OneSidedPolicy::kDrop}};
const std::map<std::string, MissingDirectionPolicy> kMissingPolicies = {
    {"half", MissingDirectionPolicy::kHalf}, {"skip", MissingDirectionPolicy::kSkip}};
const std::map<std::string, ReportFormat> kReportFormats = {
    {"text", ReportFormat::kText}, {"json", ReportFormat::kJson}};

template <typename T>
CLI::Option* AddEnum(CLI::App* app, const std::string& name, T& target,
                     const std::map<std::string, T>& values, const std::string& help) {
  std::string names;
  std::string current;
  for (const auto& [key, value] : values) {
    names += (names.empty() ? "" : ",") + key;
    if (value == target) current = key;
  }
  return app->add_option(name, target, help)
      ->transform(CLI::CheckedTransformer(values).description(""))
      ->type_name("{" + names + "}")
      ->default_str(current);
}

std::string NameOf(Direction d) { return std::string(DirectionName(d)); }

// Null-rule options shared by the commands that read prediction files.
struct NullRuleOptions {
  std::string mode = "auto";
  double tau = 0.0;

  void Register(CLI::App* app) {
    app->add_option("--null-mode", mode, "NULL decision rule")
        ->check(CLI::IsMember({"auto", "na-token", "score-threshold"}))
        ->capture_default_str();
    app->add_option("--tau", tau, "NULL threshold offset")->capture_default_str();
  }

  // "auto" uses the <NA> slot when the file carries one.
  NullRule Resolve(const PredictionFileHeader& header) const {
    NullRule rule;
    rule.tau = tau;
    if (mode == "na-token" || (mode == "auto" && header.null_slot)) {
      rule.mode = NullMode::kNaToken;
    } else {
      rule.mode = NullMode::kScoreThreshold;
    }
    return rule;
  }
};

// Corpus pairing.

struct DocPair {
  const Document* src = nullptr;
  const Document* tgt = nullptr;
};

std::vector<DocPair> PairByIndex(const std::vector<Document>& src,
                                 const std::vector<Document>& tgt) {
  if (src.size() != tgt.size()) {
    Fail(ErrorKind::kValidation,
         fmt::format("source corpus has {} documents, target corpus has {}", src.size(),
                     tgt.size()));
  }
  std::vector<DocPair> pairs;
  pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) pairs.push_back(DocPair{&src[i], &tgt[i]});
  return pairs;
}

using PairKey = std::pair<std::string, std::string>;
using RecordIndex = std::map<PairKey, std::vector<PredictionRecord>>;

// Groups records by (source doc, target doc) regardless of file direction.
RecordIndex IndexRecords(const std::vector<PredictionRecord>& records, Direction direction,
                         const std::vector<DocPair>& pairs, const std::string& source) {
  std::map<PairKey, bool> known;
  for (const auto& p : pairs) known[{p.src->doc_id(), p.tgt->doc_id()}] = true;
  RecordIndex index;
  for (const auto& record : records) {
    PairKey key = direction == Direction::kSrcToTgt
                      ? PairKey{record.query_doc_id, record.target_doc_id}
                      : PairKey{record.target_doc_id, record.query_doc_id};
    if (!known.contains(key)) {
      Fail(ErrorKind::kReference,
           fmt::format("{}: record '{}' refers to unknown document pair {} -> {}", source,
                       record.qid, record.query_doc_id, record.target_doc_id));
    }
    index[key].push_back(record);
  }
  return index;
}

PredictionFile LoadDirected(const std::string& path, Direction expected, int top_k) {
  PredictionFile file = LoadPredictions(path, top_k);
  if (file.header.direction != expected) {
    Fail(ErrorKind::kValidation, fmt::format("{}:1: expected direction {}, header says {}",
                                             path, NameOf(expected),
                                             NameOf(file.header.direction)));
  }
  return file;
}

std::vector<PredictionRecord> Ruled(const std::vector<PredictionRecord>* records,
                                    const NullRule& rule) {
  std::vector<PredictionRecord> out;
  if (records == nullptr) return out;
  out.reserve(records->size());
  for (const auto& r : *records) out.push_back(ApplyNullRule(r, rule));
  return out;
}

const std::vector<PredictionRecord>* Lookup(const RecordIndex& index, const DocPair& pair) {
  auto it = index.find({pair.src->doc_id(), pair.tgt->doc_id()});
  return it == index.end() ? nullptr : &it->second;
}

// ILP alignment of one document pair.

struct IlpSettings {
  SnapConfig snap;
  CombineConfig combine;
  std::string solver = "exact";
  int exact_cap = 200;
  bool emit_nulls = false;
};

struct IlpOutput {
  Alignment alignment;
  std::string candidates;
  std::string report;
};

IlpOutput AlignIlpPair(const DocPair& pair, const std::vector<PredictionRecord>& fwd,
                       const std::vector<PredictionRecord>& rev, const IlpSettings& s) {
  const Document& src = *pair.src;
  const Document& tgt = *pair.tgt;
  const auto fwd_units = CollectCandidates(fwd, src, tgt, s.snap);
  const auto rev_units = SwapSides(CollectCandidates(rev, tgt, src, s.snap));
  const auto candidates = CombineScores(fwd_units, rev_units, s.combine);
  const SolveReport report =
      s.solver == "greedy"
          ? SolveGreedy(candidates, src.num_sentences(), tgt.num_sentences())
          : SolveExact(candidates, src.num_sentences(), tgt.num_sentences(),
                       ExactOptions{s.exact_cap});
  IlpOutput out;
  out.alignment = AlignmentFromSelection(report, candidates, src, tgt, s.emit_nulls);
  out.report = SerializeReport(report, src.doc_id(), tgt.doc_id()) + "\n";
  std::vector<SentenceUnitCandidate> all = fwd_units;
  all.insert(all.end(), rev_units.begin(), rev_units.end());
  out.candidates = SerializeCandidates(all, src.doc_id(), tgt.doc_id());
  return out;
}

Alignment AlignSymPair(const DocPair& pair, const std::vector<PredictionRecord>& fwd,
                       const std::vector<PredictionRecord>& rev, const SymConfig& config) {
  const auto f = DirectedScores(fwd, *pair.src, *pair.tgt, Direction::kSrcToTgt);
  const auto r = DirectedScores(rev, *pair.tgt, *pair.src, Direction::kTgtToSrc);
  return AverageAndThreshold(f, r, config, pair.src->doc_id(), pair.tgt->doc_id());
}

std::string SerializeAlignments(const std::vector<Alignment>& alignments) {
  std::ostringstream out;
  WriteAlignments(out, alignments);
  return out.str();
}

std::string SerializeCorpus(const std::vector<Document>& docs) {
  std::ostringstream out;
  WriteCorpus(out, docs);
  return out.str();
}

const Alignment& GoldFor(const std::vector<Alignment>& gold, const DocPair& pair) {
  for (const auto& a : gold) {
    if (a.src_doc_id == pair.src->doc_id() && a.tgt_doc_id == pair.tgt->doc_id()) return a;
  }
  Fail(ErrorKind::kReference, "no gold alignment for " + pair.src->doc_id() + " -> " +
                                  pair.tgt->doc_id());
}

std::vector<PredictionRecord> ScorePlanted(const DocPair& pair, const Alignment& gold,
                                           Direction direction, double sharpness, int top_k) {
  if (direction == Direction::kSrcToTgt) {
    return PlantedScorer(gold, sharpness).Score(*pair.src, *pair.tgt, top_k);
  }
  return PlantedScorer(Transpose(gold), sharpness).Score(*pair.tgt, *pair.src, top_k);
}

template <typename T>
std::vector<T> Concat(std::vector<std::vector<T>> parts) {
  std::vector<T> out;
  for (auto& p : parts) {
    for (auto& x : p) out.push_back(std::move(x));
  }
  return out;
}

// ----------------------------------------------------------------- synth

struct SynthOptions {
  std::string src, tgt, gold, out = "synth.json";
  SynthConfig config;
  std::string direction = "src-tgt";
  bool with_nulls = false;

  void Register(CLI::App* app) {
    app->add_option("--src", src, "source corpus (JSONL)");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--gold", gold, "gold alignments; pairs come from its 1-1 groups");
    app->add_option("--out", out, "SQuAD JSON output")->capture_default_str();
    app->add_option("--negatives", config.num_negatives, "negative sentences per context")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    AddEnum(app, "--mode", config.mode, kSamplingModes, "negative sampling");
    AddEnum(app, "--squad-version", config.version, kSquadVersions, "output layout");
    app->add_option("--direction", direction, "query side")
        ->check(CLI::IsMember({"src-tgt", "tgt-src"}))
        ->capture_default_str();
    app->add_option("--max-query-tokens", config.max_query_tokens)->capture_default_str();
    app->add_option("--max-context-tokens", config.max_context_tokens)->capture_default_str();
    app->add_option("--corpus-name", config.corpus_name)->capture_default_str();
    app->add_option("--null-cap", config.null_cap, "NULL examples per source sentence")
        ->capture_default_str();
    AddEnum(app, "--null-sampling", config.null_sampling, kNullSamplings,
            "where NULL contexts come from");
    app->add_flag("--with-nulls", with_nulls, "add unanswerable examples (needs --gold)");
  }

  int Execute(const Context& ctx) {
    RequireSet(src, "--src");
    RequireSet(tgt, "--tgt");
    if (with_nulls && gold.empty()) {
      Fail(ErrorKind::kConfiguration, "--with-nulls needs --gold");
    }
    RequireInputs({&src, &tgt, &gold});
    ctx.Output(out);
    config.seed = ctx.global().seed;
    config.direction = direction;
    config.Validate();

    const auto src_docs = LoadCorpus(src);
    const auto tgt_docs = LoadCorpus(tgt);
    std::vector<Alignment> gold_links;
    ParallelCorpus corpus;
    if (gold.empty()) {
      corpus = ParallelCorpusFromDocuments(src_docs, tgt_docs);
    } else {
      gold_links = LoadAlignments(gold, src_docs, tgt_docs);
      corpus = ParallelCorpusFromAlignments(src_docs, tgt_docs, gold_links);
    }
    const bool reversed = direction == "tgt-src";
    if (reversed) corpus = corpus.Reversed();
    std::vector<SquadRecord> records = Synthesize(corpus, config);
    if (with_nulls) {
      std::vector<Alignment> oriented = gold_links;
      if (reversed) {
        for (auto& a : oriented) a = Transpose(a);
      }
      std::vector<AlignedDocumentPair> docs;
      for (const auto& a : oriented) {
        const auto& qdocs = reversed ? tgt_docs : src_docs;
        const auto& adocs = reversed ? src_docs : tgt_docs;
        docs.push_back(AlignedDocumentPair{FindDocument(qdocs, a.src_doc_id),
                                           FindDocument(adocs, a.tgt_doc_id), &a});
      }
      auto nulls = SynthesizeNullExamples(docs, config);
      records.insert(records.end(), nulls.begin(), nulls.end());
    }
    ctx.log().info("synthesized {} records from {} pairs", records.size(), corpus.pairs.size());
    ctx.Write(out, SerializeSquad(records, config));
    return kExitOk;
  }
};

// ----------------------------------------------------------------- score

struct ScoreOptions {
  std::string method = "lexical";
  std::string src, tgt, dict, gold, out;
  std::string direction = "src-tgt";
  int top_k = 5;
  int max_span_sentences = 2;
  double sharpness = 1.0;
  double null_score = 0.0;
  bool with_distributions = false;

  void Register(CLI::App* app) {
    app->add_option("--method", method, "scorer")
        ->check(CLI::IsMember({"lexical", "planted"}))
        ->capture_default_str();
    app->add_option("--src", src, "source corpus (JSONL)");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--dict", dict, "bilingual dictionary (TSV), lexical scorer");
    app->add_option("--gold", gold, "gold alignments, planted scorer");
    app->add_option("--direction", direction, "query side")
        ->check(CLI::IsMember({"src-tgt", "tgt-src"}))
        ->capture_default_str();
    app->add_option("--out", out, "prediction file (default predictions.<direction>.jsonl)");
    app->add_option("--top-k", top_k)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--max-span-sentences", max_span_sentences)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--sharpness", sharpness, "planted mass on the gold span")
        ->capture_default_str();
    app->add_option("--null-score", null_score, "lexical NULL score")->capture_default_str();
    app->add_flag("--with-distributions", with_distributions,
                  "write start/end probability vectors");
  }

  int Execute(const Context& ctx) {
    RequireSet(src, "--src");
    RequireSet(tgt, "--tgt");
    RequireSet(method == "lexical" ? dict : gold, method == "lexical" ? "--dict" : "--gold");
    RequireInputs({&src, &tgt, method == "lexical" ? &dict : &gold});
    const Direction dir = ParseDirection(direction);
    const std::string out_name = out.empty() ? "predictions." + direction + ".jsonl" : out;
    ctx.Output(out_name);

    const auto src_docs = LoadCorpus(src);
    const auto tgt_docs = LoadCorpus(tgt);
    const auto pairs = PairByIndex(src_docs, tgt_docs);
    PredictionFile file;
    file.header.direction = dir;
    file.header.producer = method;
    if (method == "lexical") {
      const Dictionary lexicon = LoadDictionary(dict);
      const Dictionary inverted = lexicon.Inverted();
      const LexicalScorerConfig cfg{max_span_sentences, top_k, null_score};
      file.records = Concat(ParallelMap<std::vector<PredictionRecord>>(
          ctx.global().jobs, pairs.size(), [&](std::size_t i) {
            const DocPair& p = pairs[i];
            return dir == Direction::kSrcToTgt ? ScoreLexical(*p.src, *p.tgt, lexicon, cfg)
                                               : ScoreLexical(*p.tgt, *p.src, inverted, cfg);
          }));
    } else {
      const auto gold_links = LoadAlignments(gold, src_docs, tgt_docs);
      file.header.null_slot = true;
      file.header.normalized = true;
      file.records = Concat(ParallelMap<std::vector<PredictionRecord>>(
          ctx.global().jobs, pairs.size(), [&](std::size_t i) {
            return ScorePlanted(pairs[i], GoldFor(gold_links, pairs[i]), dir, sharpness,
                                top_k);
          }));
    }
    ctx.log().info("scored {} queries", file.records.size());
    ctx.Write(out_name, SerializePredictions(file, with_distributions));
    return kExitOk;
  }
};

// ------------------------------------------------------------- align-ilp

struct AlignIlpOptions {
  std::string src, tgt, fwd, rev, out = "alignments.jsonl", candidates, report;
  std::string c_prime = "auto";
  int top_k = 20;
  IlpSettings settings;
  NullRuleOptions null_rule;

  void Register(CLI::App* app) {
    app->add_option("--src", src, "source corpus (JSONL)");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--fwd", fwd, "src-tgt prediction file");
    app->add_option("--rev", rev, "tgt-src prediction file");
    app->add_option("--out", out, "alignment output")->capture_default_str();
    app->add_option("--candidates", candidates, "dump sentence-unit candidates here");
    app->add_option("--report", report, "write per-pair solver reports here");
    app->add_option("--c", settings.combine.c, "forward weight")->capture_default_str();
    app->add_option("--c-prime", c_prime, "reverse weight or 'auto'")->capture_default_str();
    AddEnum(app, "--one-sided", settings.combine.one_sided, kOneSidedPolicies,
            "candidates scored in one direction only");
    app->add_option("--solver", settings.solver)
        ->check(CLI::IsMember({"exact", "greedy"}))
        ->capture_default_str();
    app->add_option("--exact-cap", settings.exact_cap, "most candidates the exact solver accepts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_flag("--emit-nulls", settings.emit_nulls, "emit uncovered sentences as NULL");
    app->add_option("--min-score", settings.snap.min_score, "drop spans scoring below this")
        ->capture_default_str();
    AddEnum(app, "--boundary", settings.snap.boundary_rule, kBoundaryRules,
            "span-to-sentence snapping");
    app->add_option("--top-k", top_k, "spans per query read from probability vectors")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    null_rule.Register(app);
  }

  int Execute(const Context& ctx) {
    RequireSet(src, "--src");
    RequireSet(tgt, "--tgt");
    RequireSet(fwd, "--fwd");
    RequireInputs({&src, &tgt, &fwd, &rev});
    ctx.Output(out);
    if (!candidates.empty()) ctx.Output(candidates);
    if (!report.empty()) ctx.Output(report);
    if (c_prime != "auto") settings.combine.c_prime = ParseNumber(c_prime, "--c-prime");

    const auto src_docs = LoadCorpus(src);
    const auto tgt_docs = LoadCorpus(tgt);
    const auto pairs = PairByIndex(src_docs, tgt_docs);
    const PredictionFile fwd_file = LoadDirected(fwd, Direction::kSrcToTgt, top_k);
    const RecordIndex fwd_index =
        IndexRecords(fwd_file.records, Direction::kSrcToTgt, pairs, fwd);
    const NullRule fwd_rule = null_rule.Resolve(fwd_file.header);
    RecordIndex rev_index;
    NullRule rev_rule = fwd_rule;
    if (!rev.empty()) {
      const PredictionFile rev_file = LoadDirected(rev, Direction::kTgtToSrc, top_k);
      rev_index = IndexRecords(rev_file.records, Direction::kTgtToSrc, pairs, rev);
      rev_rule = null_rule.Resolve(rev_file.header);
    }

    const auto results = ParallelMap<IlpOutput>(ctx.global().jobs, pairs.size(),
                                                [&](std::size_t i) {
      const auto f = Ruled(Lookup(fwd_index, pairs[i]), fwd_rule);
      const auto r = Ruled(Lookup(rev_index, pairs[i]), rev_rule);
      return AlignIlpPair(pairs[i], f, r, settings);
    });
    std::vector<Alignment> alignments;
    std::string cand_text, report_text;
    for (const auto& r : results) {
      alignments.push_back(r.alignment);
      cand_text += r.candidates;
      report_text += r.report;
    }
    ctx.Write(out, SerializeAlignments(alignments));
    if (!candidates.empty()) ctx.Write(candidates, cand_text);
    if (!report.empty()) ctx.Write(report, report_text);
    return kExitOk;
  }
};

// ------------------------------------------------------------- align-sym

struct AlignSymOptions {
  std::string src, tgt, fwd, rev, out = "alignments.jsonl";
  int top_k = 20;
  SymConfig config;
  NullRuleOptions null_rule;

  void Register(CLI::App* app) {
    app->add_option("--src", src, "source corpus (JSONL)");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--fwd", fwd, "src-tgt prediction file");
    app->add_option("--rev", rev, "tgt-src prediction file");
    app->add_option("--out", out, "alignment output")->capture_default_str();
    app->add_option("--theta", config.theta, "keep pairs whose average exceeds this")
        ->capture_default_str();
    AddEnum(app, "--missing", config.missing, kMissingPolicies,
            "pairs predicted in one direction only");
    app->add_option("--top-k", top_k)->check(CLI::PositiveNumber)->capture_default_str();
    null_rule.Register(app);
  }

  int Execute(const Context& ctx) {
    RequireSet(src, "--src");
    RequireSet(tgt, "--tgt");
    RequireSet(fwd, "--fwd");
    RequireSet(rev, "--rev");
    RequireInputs({&src, &tgt, &fwd, &rev});
    ctx.Output(out);

    const auto src_docs = LoadCorpus(src);
    const auto tgt_docs = LoadCorpus(tgt);
    const auto pairs = PairByIndex(src_docs, tgt_docs);
    const PredictionFile fwd_file = LoadDirected(fwd, Direction::kSrcToTgt, top_k);
    const PredictionFile rev_file = LoadDirected(rev, Direction::kTgtToSrc, top_k);
    const auto fwd_index = IndexRecords(fwd_file.records, Direction::kSrcToTgt, pairs, fwd);
    const auto rev_index = IndexRecords(rev_file.records, Direction::kTgtToSrc, pairs, rev);
    const NullRule fwd_rule = null_rule.Resolve(fwd_file.header);
    const NullRule rev_rule = null_rule.Resolve(rev_file.header);

    const auto alignments = ParallelMap<Alignment>(ctx.global().jobs, pairs.size(),
                                                   [&](std::size_t i) {
      return AlignSymPair(pairs[i], Ruled(Lookup(fwd_index, pairs[i]), fwd_rule),
                          Ruled(Lookup(rev_index, pairs[i]), rev_rule), config);
    });
    ctx.Write(out, SerializeAlignments(alignments));
    return kExitOk;
  }
};

// -------------------------------------------------------------- baseline

struct BaselineOptions {
  std::string src, tgt, dict, out = "alignments.jsonl";
  BeadPenalties penalties;

  void Register(CLI::App* app) {
    app->add_option("--src", src, "source corpus (JSONL)");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--dict", dict, "bilingual dictionary (TSV)");
    app->add_option("--out", out, "alignment output")->capture_default_str();
    app->add_option("--penalty-1-1", penalties.one_one)->capture_default_str();
    app->add_option("--penalty-0-1", penalties.zero_one)->capture_default_str();
    app->add_option("--penalty-1-0", penalties.one_zero)->capture_default_str();
    app->add_option("--penalty-1-2", penalties.one_two)->capture_default_str();
    app->add_option("--penalty-2-1", penalties.two_one)->capture_default_str();
    app->add_option("--penalty-2-2", penalties.two_two)->capture_default_str();
  }

  int Execute(const Context& ctx) {
    RequireSet(src, "--src");
    RequireSet(tgt, "--tgt");
    RequireSet(dict, "--dict");
    RequireInputs({&src, &tgt, &dict});
    ctx.Output(out);
    penalties.Validate();

    const auto src_docs = LoadCorpus(src);
    const auto tgt_docs = LoadCorpus(tgt);
    const auto pairs = PairByIndex(src_docs, tgt_docs);
    const Dictionary lexicon = LoadDictionary(dict);
    const auto alignments = ParallelMap<Alignment>(ctx.global().jobs, pairs.size(),
                                                   [&](std::size_t i) {
      const DocPair& p = pairs[i];
      return ToAlignment(DpAlign(*p.src, *p.tgt, lexicon, penalties), *p.src, *p.tgt);
    });
    ctx.Write(out, SerializeAlignments(alignments));
    return kExitOk;
  }
};

// ------------------------------------------------------------------ eval

struct EvalOptions {
  std::string mode = "pair";
  std::string src, tgt, pred, gold, report, model = "model";
  ReportFormat format = ReportFormat::kText;
  int top_k = 20;
  NullRuleOptions null_rule;

  void Register(CLI::App* app) {
    app->add_option("--mode", mode, "span F1/EM or sentence-pair P/R/F1")
        ->check(CLI::IsMember({"span", "pair"}))
        ->capture_default_str();
    app->add_option("--src", src, "source corpus (JSONL)");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--pred", pred, "prediction file (span) or alignment file (pair)");
    app->add_option("--gold", gold, "gold alignments");
    app->add_option("--model", model, "row label")->capture_default_str();
    app->add_option("--report", report, "write a JSON report here");
    AddEnum(app, "--format", format, kReportFormats, "stdout format");
    app->add_option("--top-k", top_k)->check(CLI::PositiveNumber)->capture_default_str();
    null_rule.Register(app);
  }

  int Execute(const Context& ctx) {
    RequireSet(src, "--src");
    RequireSet(tgt, "--tgt");
    RequireSet(pred, "--pred");
    RequireSet(gold, "--gold");
    RequireInputs({&src, &tgt, &pred, &gold});
    if (!report.empty()) ctx.Output(report);

    const auto src_docs = LoadCorpus(src);
    const auto tgt_docs = LoadCorpus(tgt);
    const auto gold_links = LoadAlignments(gold, src_docs, tgt_docs);
    Report result;
    if (mode == "span") {
      const PredictionFile file = LoadPredictions(pred, top_k);
      const NullRule rule = null_rule.Resolve(file.header);
      std::vector<PredictionRecord> ruled;
      for (const auto& r : file.records) ruled.push_back(ApplyNullRule(r, rule));
      const bool forward = file.header.direction == Direction::kSrcToTgt;
      std::vector<Alignment> oriented = gold_links;
      if (!forward) {
        for (auto& a : oriented) a = Transpose(a);
      }
      result.span_rows.push_back(SpanReportRow{
          model, NameOf(file.header.direction),
          EvaluateSpans(ruled, forward ? src_docs : tgt_docs, forward ? tgt_docs : src_docs,
                        oriented)});
    } else {
      const auto predicted = LoadAlignments(pred, src_docs, tgt_docs, AlignmentCheck::kRelaxed);
      result.pair_rows.push_back(PairReportRow{model, PairEvalCorpus(predicted, gold_links)});
    }
    ctx.out() << RenderReport(result, format);
    if (!report.empty()) ctx.Write(report, RenderReport(result, ReportFormat::kJson));
    return kExitOk;
  }
};

// --------------------------------------------------------------- fixture

struct FixtureOptions {
  FixtureConfig config;
  bool no_shuffle = false;
  bool one_to_one = false;
  std::string prefix;

  void Register(CLI::App* app) {
    app->add_option("--docs", config.num_docs)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--min-groups", config.min_groups)->capture_default_str();
    app->add_option("--max-groups", config.max_groups)->capture_default_str();
    app->add_option("--null-ratio", config.null_ratio)->capture_default_str();
    app->add_option("--multi-rate", config.multi_sentence_rate, "many-to-many group rate")
        ->capture_default_str();
    app->add_option("--min-tokens", config.min_tokens)->capture_default_str();
    app->add_option("--max-tokens", config.max_tokens)->capture_default_str();
    app->add_flag("--no-shuffle", no_shuffle, "keep target groups in source order");
    app->add_flag("--one-to-one", one_to_one, "sentence-parallel output, no NULLs");
    app->add_option("--prefix", prefix, "file name prefix")->capture_default_str();
  }

  int Execute(const Context& ctx) {
    config.seed = ctx.global().seed;
    if (no_shuffle) config.shuffle_target = false;
    if (one_to_one) {
      config.null_ratio = 0.0;
      config.multi_sentence_rate = 0.0;
      config.shuffle_target = false;
    }
    const std::string names[] = {prefix + "src.jsonl", prefix + "tgt.jsonl",
                                 prefix + "gold.jsonl", prefix + "dict.tsv"};
    for (const auto& n : names) ctx.Output(n);
    const BitextFixture fx = GenerateFixture(config);
    ctx.Write(names[0], SerializeCorpus(fx.src_docs));
    ctx.Write(names[1], SerializeCorpus(fx.tgt_docs));
    ctx.Write(names[2], SerializeAlignments(fx.gold));
    ctx.Write(names[3], SerializeDictionary(fx.dictionary));
    return kExitOk;
  }
};

// -------------------------------------------------------------- pipeline

struct PipelineOptions {
  std::string src, tgt, gold;
  int docs = 30;
  double sharpness = 1.0;
  int top_k = 20;
  double tau = 0.0;
  std::string c_prime = "auto";
  IlpSettings settings;
  SymConfig sym;

  void Register(CLI::App* app) {
    app->add_option("--src", src, "source corpus; a planted fixture is generated if unset");
    app->add_option("--tgt", tgt, "target corpus (JSONL)");
    app->add_option("--gold", gold, "gold alignments");
    app->add_option("--docs", docs, "fixture size when generating")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--sharpness", sharpness)->capture_default_str();
    app->add_option("--top-k", top_k)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--tau", tau, "NULL threshold offset")->capture_default_str();
    app->add_option("--c", settings.combine.c)->capture_default_str();
    app->add_option("--c-prime", c_prime)->capture_default_str();
    app->add_option("--solver", settings.solver)
        ->check(CLI::IsMember({"exact", "greedy"}))
        ->capture_default_str();
    app->add_option("--exact-cap", settings.exact_cap)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--theta", sym.theta)->capture_default_str();
  }

  int Execute(const Context& ctx) {
    const bool generate = src.empty() && tgt.empty() && gold.empty();
    if (!generate) {
      RequireSet(src, "--src");
      RequireSet(tgt, "--tgt");
      RequireSet(gold, "--gold");
      RequireInputs({&src, &tgt, &gold});
    }
    if (c_prime != "auto") settings.combine.c_prime = ParseNumber(c_prime, "--c-prime");

    std::vector<Document> src_docs, tgt_docs;
    std::vector<Alignment> gold_links;
    if (generate) {
      FixtureConfig fc;
      fc.num_docs = docs;
      fc.seed = ctx.global().seed;
      BitextFixture fx = GenerateFixture(fc);
      src_docs = std::move(fx.src_docs);
      tgt_docs = std::move(fx.tgt_docs);
      gold_links = std::move(fx.gold);
      ctx.Write("src.jsonl", SerializeCorpus(src_docs));
      ctx.Write("tgt.jsonl", SerializeCorpus(tgt_docs));
      ctx.Write("gold.jsonl", SerializeAlignments(gold_links));
    } else {
      src_docs = LoadCorpus(src);
      tgt_docs = LoadCorpus(tgt);
      gold_links = LoadAlignments(gold, src_docs, tgt_docs);
    }
    const auto pairs = PairByIndex(src_docs, tgt_docs);
    const NullRule rule{NullMode::kNaToken, tau};

    struct PairResult {
      std::vector<PredictionRecord> fwd, rev;
      Alignment ilp, sym;
    };
    auto results = ParallelMap<PairResult>(ctx.global().jobs, pairs.size(),
                                           [&](std::size_t i) {
      PairResult r;
      const Alignment& g = GoldFor(gold_links, pairs[i]);
      r.fwd = ScorePlanted(pairs[i], g, Direction::kSrcToTgt, sharpness, top_k);
      r.rev = ScorePlanted(pairs[i], g, Direction::kTgtToSrc, sharpness, top_k);
      const auto f = Ruled(&r.fwd, rule);
      const auto b = Ruled(&r.rev, rule);
      r.ilp = AlignIlpPair(pairs[i], f, b, settings).alignment;
      r.sym = AlignSymPair(pairs[i], f, b, sym);
      return r;
    });

    PredictionFile fwd_file, rev_file;
    fwd_file.header = {Direction::kSrcToTgt, "planted", false, true, true};
    rev_file.header = {Direction::kTgtToSrc, "planted", false, true, true};
    std::vector<Alignment> ilp, symmetric;
    for (auto& r : results) {
      for (auto& x : r.fwd) fwd_file.records.push_back(std::move(x));
      for (auto& x : r.rev) rev_file.records.push_back(std::move(x));
      ilp.push_back(std::move(r.ilp));
      symmetric.push_back(std::move(r.sym));
    }

    auto ruled = [&](const PredictionFile& file) {
      return Ruled(&file.records, rule);
    };
    std::vector<Alignment> transposed;
    for (const auto& a : gold_links) transposed.push_back(Transpose(a));

    Report report;
    report.span_rows.push_back(SpanReportRow{
        "planted", "src-tgt", EvaluateSpans(ruled(fwd_file), src_docs, tgt_docs, gold_links)});
    report.span_rows.push_back(SpanReportRow{
        "planted", "tgt-src", EvaluateSpans(ruled(rev_file), tgt_docs, src_docs, transposed)});
    report.pair_rows.push_back(PairReportRow{"planted+ilp", PairEvalCorpus(ilp, gold_links)});
    report.pair_rows.push_back(
        PairReportRow{"planted+sym", PairEvalCorpus(symmetric, gold_links)});

    ctx.Write("predictions.src-tgt.jsonl", SerializePredictions(fwd_file, false));
    ctx.Write("predictions.tgt-src.jsonl", SerializePredictions(rev_file, false));
    ctx.Write("alignments.ilp.jsonl", SerializeAlignments(ilp));
    ctx.Write("alignments.sym.jsonl", SerializeAlignments(symmetric));
    ctx.Write("report.json", RenderReport(report, ReportFormat::kJson));
    ctx.out() << RenderReport(report, ReportFormat::kText);
    return kExitOk;
  }
};

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSolverCapExceeded:
      return kExitSolverCap;
    case ErrorKind::kIo:
      return kExitIo;
    default:
      return kExitUsage;
  }
}

}  // namespace

std::string VersionString() {
  std::string s = "spanalign " SPANALIGN_VERSION;
  const std::string build = SPANALIGN_BUILD_TYPE;
  const std::string compiler = SPANALIGN_COMPILER;
  if (!build.empty() || !compiler.empty()) {
    s += " (";
    s += build.empty() ? compiler : (compiler.empty() ? build : build + ", " + compiler);
    s += ")";
  }
  return s;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentence alignment through span prediction", "spanalign"};
  app.fallthrough();
  app.require_subcommand(1);
  app.allow_config_extras(false);
  app.set_config("--config", "", "TOML/INI run configuration; flags override it")
      ->envname("SPANALIGN_CONFIG");
  app.set_version_flag("--version", VersionString());

  GlobalOptions global;
  app.add_option("--seed,--rng-seed", global.seed, "RNG seed")->capture_default_str();
  app.add_option("--jobs", global.jobs, "worker threads over document pairs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-level", global.log_level)
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}))
      ->capture_default_str();
  app.add_option("--out-dir", global.out_dir, "all outputs are written under this directory")
      ->capture_default_str();

  SynthOptions synth;
  ScoreOptions score;
  AlignIlpOptions align_ilp;
  AlignSymOptions align_sym;
  BaselineOptions baseline;
  EvalOptions eval;
  FixtureOptions fixture;
  PipelineOptions pipeline;

  std::vector<std::pair<CLI::App*, std::function<int(const Context&)>>> commands;
  auto add = [&](const char* name, const char* help, auto& opts) {
    CLI::App* sub = app.add_subcommand(name, help);
    opts.Register(sub);
    commands.emplace_back(sub, [&opts](const Context& ctx) { return opts.Execute(ctx); });
  };
  add("synth", "synthesize SQuAD-style span-prediction data", synth);
  add("score", "score query spans (lexical or planted)", score);
  add("align-ilp", "align by exact or greedy span-pair selection", align_ilp);
  add("align-sym", "align by symmetrized sentence-pair averages", align_sym);
  add("baseline", "dictionary DP baseline aligner", baseline);
  add("eval", "span F1/EM or sentence-pair P/R/F1", eval);
  add("fixture", "write a planted bitext fixture", fixture);
  add("pipeline", "planted score, align and evaluate end to end", pipeline);

  // CLI11 consumes arguments from the back.
  std::vector<std::string> rest(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << "\n\n";
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("spanalign", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::from_str(global.log_level));

  try {
    Context ctx(global, out, logger);
    for (auto& [sub, execute] : commands) {
      if (sub->parsed()) return execute(ctx);
    }
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace spanalign::cli
