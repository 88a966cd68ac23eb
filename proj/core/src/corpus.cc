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

#include "spanalign/corpus.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "spanalign/errors.h"
#include "spanalign/io.h"

namespace spanalign {

using json = nlohmann::ordered_json;

std::pair<int, int> ToInclusive(Span span) {
  if (span.is_null()) Fail(ErrorKind::kContract, "cannot write a null span");
  return {span.start + 1, span.end};
}

Span FromInclusive(int first, int last) {
  if (first < 1 || last < first) {
    Fail(ErrorKind::kParse, "bad inclusive span [" + std::to_string(first) +
                                ", " + std::to_string(last) + "]");
  }
  return Span{first - 1, last};
}

std::vector<int> SentenceRange::ids() const {
  std::vector<int> out;
  for (int i = begin; i < end; ++i) out.push_back(i);
  return out;
}

std::string Detokenize(const std::vector<std::string>& tokens, bool no_space) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !no_space) out += ' ';
    out += tokens[i];
  }
  return out;
}

Document Document::Create(std::string doc_id, std::string lang, bool no_space,
                          std::vector<SentenceInput> sentences) {
  if (doc_id.empty()) Fail(ErrorKind::kValidation, "empty doc_id");
  Document doc;
  doc.doc_id_ = std::move(doc_id);
  doc.lang_ = std::move(lang);
  doc.no_space_ = no_space;
  doc.sentences_.reserve(sentences.size());
  for (auto& input : sentences) {
    const int sent_id = static_cast<int>(doc.sentences_.size());
    const std::string where =
        "document '" + doc.doc_id_ + "' sentence " + std::to_string(sent_id);
    if (input.tokens.empty()) Fail(ErrorKind::kValidation, where + ": no tokens");
    for (const auto& token : input.tokens) {
      if (token.empty()) Fail(ErrorKind::kValidation, where + ": empty token");
    }
    if (Detokenize(input.tokens, no_space) != input.text) {
      Fail(ErrorKind::kValidation,
           where + ": text does not match its detokenized tokens");
    }
    Sentence sentence;
    sentence.sent_id = sent_id;
    sentence.token_range.start = doc.num_tokens();
    doc.tokens_.insert(doc.tokens_.end(), input.tokens.begin(), input.tokens.end());
    sentence.token_range.end = doc.num_tokens();
    sentence.text = std::move(input.text);
    sentence.tokens = std::move(input.tokens);
    doc.sentences_.push_back(std::move(sentence));
  }
  return doc;
}

Span Document::TokenSpan(SentenceRange range) const {
  if (range.empty() || range.begin < 0 || range.end > num_sentences()) {
    Fail(ErrorKind::kContract, "sentence range out of bounds in '" + doc_id_ + "'");
  }
  return Span{sentences_[range.begin].token_range.start,
              sentences_[range.end - 1].token_range.end};
}

int Document::SentenceOfToken(int token) const {
  if (token < 0 || token >= num_tokens()) {
    Fail(ErrorKind::kContract, "token index out of bounds in '" + doc_id_ + "'");
  }
  auto it = std::upper_bound(
      sentences_.begin(), sentences_.end(), token,
      [](int t, const Sentence& s) { return t < s.token_range.start; });
  return static_cast<int>(std::distance(sentences_.begin(), it)) - 1;
}

std::vector<int> Document::Boundaries() const {
  std::vector<int> out;
  out.reserve(sentences_.size() + 1);
  for (const auto& s : sentences_) out.push_back(s.token_range.start);
  out.push_back(num_tokens());
  return out;
}

std::string Document::Join(SentenceRange range) const {
  std::string out;
  for (int i = range.begin; i < range.end; ++i) {
    if (i > range.begin) out += separator();
    out += sentences_[i].text;
  }
  return out;
}

std::vector<int> SpanToSentenceCover(const Document& doc, Span span) {
  std::vector<int> out;
  if (span.is_null()) return out;
  if (span.start < 0 || span.end > doc.num_tokens() || span.start >= span.end) {
    Fail(ErrorKind::kContract, "span outside document '" + doc.doc_id() + "'");
  }
  for (int i = doc.SentenceOfToken(span.start); i < doc.num_sentences(); ++i) {
    const Span range = doc.sentences()[i].token_range;
    if (range.start >= span.end) break;
    if (span.contains(range)) out.push_back(i);
  }
  return out;
}

namespace {

void CheckIds(const std::vector<int>& ids, AlignmentCheck check,
              const std::string& where, const char* side) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] <= ids[i - 1]) {
      Fail(ErrorKind::kValidation,
           where + side + " ids are not strictly increasing");
    }
    if (check == AlignmentCheck::kStrict && ids[i] != ids[i - 1] + 1) {
      Fail(ErrorKind::kValidation, where + side + " ids are not contiguous");
    }
  }
}

}  // namespace

void ValidateAlignment(const Alignment& alignment, AlignmentCheck check,
                       const Document* src_doc, const Document* tgt_doc) {
  const std::string pair =
      "alignment " + alignment.src_doc_id + " -> " + alignment.tgt_doc_id;
  std::set<int> seen_src;
  std::set<int> seen_tgt;
  for (std::size_t g = 0; g < alignment.links.size(); ++g) {
    const auto& group = alignment.links[g];
    const std::string where = pair + " group " + std::to_string(g) + ": ";
    if (group.src.empty() && group.tgt.empty()) {
      Fail(ErrorKind::kValidation, where + "both sides empty");
    }
    if (group.score && !(*group.score >= 0.0)) {
      Fail(ErrorKind::kValidation, where + "negative or NaN score");
    }
    CheckIds(group.src, check, where, "source");
    CheckIds(group.tgt, check, where, "target");
    for (int s : group.src) {
      if (s < 0 || (src_doc && s >= src_doc->num_sentences())) {
        Fail(ErrorKind::kReference,
             where + "source sentence " + std::to_string(s) + " does not exist");
      }
      if (!seen_src.insert(s).second) {
        Fail(ErrorKind::kValidation,
             where + "source sentence " + std::to_string(s) + " reused");
      }
    }
    for (int t : group.tgt) {
      if (t < 0 || (tgt_doc && t >= tgt_doc->num_sentences())) {
        Fail(ErrorKind::kReference,
             where + "target sentence " + std::to_string(t) + " does not exist");
      }
      if (!seen_tgt.insert(t).second) {
        Fail(ErrorKind::kValidation,
             where + "target sentence " + std::to_string(t) + " reused");
      }
    }
  }
}

Alignment Transpose(const Alignment& alignment) {
  Alignment out{alignment.tgt_doc_id, alignment.src_doc_id, {}};
  out.links.reserve(alignment.links.size());
  for (const auto& group : alignment.links) {
    out.links.push_back(AlignmentGroup{group.tgt, group.src, group.score});
  }
  return out;
}

const Document* FindDocument(const std::vector<Document>& docs,
                             std::string_view doc_id) {
  for (const auto& doc : docs) {
    if (doc.doc_id() == doc_id) return &doc;
  }
  return nullptr;
}

// --- file formats -----------------------------------------------------------

namespace {

template <typename Fn>
void ForEachRecord(std::istream& in, std::string_view source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(ErrorKind::kParse, Where(source, line_no) + e.what());
    }
    try {
      fn(record, line_no);
    } catch (const json::exception& e) {
      Fail(ErrorKind::kParse, Where(source, line_no) + e.what());
    } catch (const Error& e) {
      Fail(e.kind(), Where(source, line_no) + e.what());
    }
  }
}

}  // namespace

std::vector<Document> ReadCorpus(std::istream& in, std::string_view source) {
  std::vector<Document> docs;
  std::set<std::string> ids;
  ForEachRecord(in, source, [&](const json& record, std::size_t) {
    std::vector<SentenceInput> sentences;
    for (const auto& s : record.at("sentences")) {
      sentences.push_back(SentenceInput{s.at("text").get<std::string>(),
                                        s.at("tokens").get<std::vector<std::string>>()});
    }
    Document doc = Document::Create(record.at("doc_id").get<std::string>(),
                                    record.value("lang", std::string()),
                                    record.value("no_space", false),
                                    std::move(sentences));
    if (!ids.insert(doc.doc_id()).second) {
      Fail(ErrorKind::kValidation, "duplicate doc_id '" + doc.doc_id() + "'");
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

std::vector<Document> LoadCorpus(const std::string& path) {
  auto in = OpenInput(path);
  return ReadCorpus(in, path);
}

std::string SerializeDocument(const Document& doc) {
  json record;
  record["doc_id"] = doc.doc_id();
  record["lang"] = doc.lang();
  record["no_space"] = doc.no_space();
  json sentences = json::array();
  for (const auto& s : doc.sentences()) {
    sentences.push_back(json{{"text", s.text}, {"tokens", s.tokens}});
  }
  record["sentences"] = std::move(sentences);
  return record.dump();
}

void WriteCorpus(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& doc : docs) out << SerializeDocument(doc) << '\n';
}

namespace {

Alignment ParseAlignment(const json& record) {
  Alignment alignment;
  alignment.src_doc_id = record.at("src_doc_id").get<std::string>();
  alignment.tgt_doc_id = record.at("tgt_doc_id").get<std::string>();
  for (const auto& link : record.at("links")) {
    AlignmentGroup group;
    group.src = link.at("src").get<std::vector<int>>();
    group.tgt = link.at("tgt").get<std::vector<int>>();
    if (link.contains("score") && !link.at("score").is_null()) {
      group.score = link.at("score").get<double>();
    }
    alignment.links.push_back(std::move(group));
  }
  return alignment;
}

}  // namespace

std::vector<Alignment> ReadAlignments(std::istream& in, std::string_view source) {
  std::vector<Alignment> out;
  ForEachRecord(in, source, [&](const json& record, std::size_t) {
    out.push_back(ParseAlignment(record));
  });
  return out;
}

std::vector<Alignment> LoadAlignments(const std::string& path,
                                      const std::vector<Document>& src_docs,
                                      const std::vector<Document>& tgt_docs,
                                      AlignmentCheck check) {
  auto in = OpenInput(path);
  std::vector<Alignment> out;
  ForEachRecord(in, path, [&](const json& record, std::size_t) {
    Alignment alignment = ParseAlignment(record);
    const Document* src = FindDocument(src_docs, alignment.src_doc_id);
    const Document* tgt = FindDocument(tgt_docs, alignment.tgt_doc_id);
    if (!src) {
      Fail(ErrorKind::kReference,
           "unknown source doc_id '" + alignment.src_doc_id + "'");
    }
    if (!tgt) {
      Fail(ErrorKind::kReference,
           "unknown target doc_id '" + alignment.tgt_doc_id + "'");
    }
    ValidateAlignment(alignment, check, src, tgt);
    out.push_back(std::move(alignment));
  });
  return out;
}

std::string SerializeAlignment(const Alignment& alignment) {
  json record;
  record["src_doc_id"] = alignment.src_doc_id;
  record["tgt_doc_id"] = alignment.tgt_doc_id;
  json links = json::array();
  for (const auto& group : alignment.links) {
    json link{{"src", group.src}, {"tgt", group.tgt}};
    if (group.score) link["score"] = *group.score;
    links.push_back(std::move(link));
  }
  record["links"] = std::move(links);
  return record.dump();
}

void WriteAlignments(std::ostream& out, const std::vector<Alignment>& alignments) {
  for (const auto& a : alignments) out << SerializeAlignment(a) << '\n';
}

}  // namespace spanalign
