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

#ifndef SPANALIGN_CORPUS_H_
#define SPANALIGN_CORPUS_H_

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spanalign {

// Half-open token interval [start, end). Files carry 1-based inclusive
// pairs; see ToInclusive()/FromInclusive().
struct Span {
  int start = -1;
  int end = -1;

  static constexpr Span Null() { return Span{}; }

  constexpr bool is_null() const { return start < 0; }
  constexpr int length() const { return is_null() ? 0 : end - start; }
  constexpr bool contains(Span other) const {
    return !is_null() && !other.is_null() && start <= other.start &&
           other.end <= end;
  }

  friend constexpr bool operator==(Span, Span) = default;
  friend constexpr auto operator<=>(Span, Span) = default;
};

// 1-based inclusive (k, l) as written on disk <-> half-open token span.
// Position 0 is reserved for the null slot, so FromInclusive(0, 0) is the
// null-slot-only span [-1, 0) and is rejected; callers handle the slot first.
std::pair<int, int> ToInclusive(Span span);
Span FromInclusive(int first, int last);

// Contiguous half-open run of sentence indices.
struct SentenceRange {
  int begin = 0;
  int end = 0;

  constexpr int size() const { return end - begin; }
  constexpr bool empty() const { return end <= begin; }
  constexpr bool contains(int sent) const { return begin <= sent && sent < end; }
  constexpr bool overlaps(SentenceRange other) const {
    return begin < other.end && other.begin < end;
  }
  std::vector<int> ids() const;

  friend constexpr bool operator==(SentenceRange, SentenceRange) = default;
  friend constexpr auto operator<=>(SentenceRange, SentenceRange) = default;
};

struct Sentence {
  int sent_id = 0;
  std::string text;
  std::vector<std::string> tokens;
  Span token_range;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct SentenceInput {
  std::string text;
  std::vector<std::string> tokens;
};

// Tokenized, sentence-segmented document. Immutable once built; Create()
// checks every invariant (non-empty tokens, text/token agreement, partition).
class Document {
 public:
  static Document Create(std::string doc_id, std::string lang, bool no_space,
                         std::vector<SentenceInput> sentences);

  const std::string& doc_id() const { return doc_id_; }
  const std::string& lang() const { return lang_; }
  bool no_space() const { return no_space_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  int num_sentences() const { return static_cast<int>(sentences_.size()); }
  int num_tokens() const { return static_cast<int>(tokens_.size()); }

  // Token span covering sentences [range.begin, range.end).
  Span TokenSpan(SentenceRange range) const;
  // Index of the sentence holding `token`.
  int SentenceOfToken(int token) const;
  // Sentence boundaries as token offsets: 0, each sentence start, M.
  std::vector<int> Boundaries() const;
  // Joins sentence texts with the document's separator rule.
  std::string Join(SentenceRange range) const;
  std::string_view separator() const { return no_space_ ? "" : " "; }

  friend bool operator==(const Document&, const Document&) = default;

 private:
  Document() = default;

  std::string doc_id_;
  std::string lang_;
  bool no_space_ = false;
  std::vector<Sentence> sentences_;
  std::vector<std::string> tokens_;
};

// Detokenization rule used to check Sentence text against its tokens.
std::string Detokenize(const std::vector<std::string>& tokens, bool no_space);

// Sentences whose token range lies entirely inside `span` (containment, not
// overlap). A null span covers nothing.
std::vector<int> SpanToSentenceCover(const Document& doc, Span span);

struct AlignmentGroup {
  std::vector<int> src;
  std::vector<int> tgt;
  std::optional<double> score;

  bool is_null() const { return src.empty() || tgt.empty(); }
  friend bool operator==(const AlignmentGroup&, const AlignmentGroup&) = default;
};

struct Alignment {
  std::string src_doc_id;
  std::string tgt_doc_id;
  std::vector<AlignmentGroup> links;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

enum class AlignmentCheck {
  // Non-overlap plus contiguous, strictly increasing id lists.
  kStrict,
  // Strictly increasing ids and non-overlap; groups may be non-contiguous.
  kRelaxed,
};

// Throws kValidation on invariant violations and kReference when a sentence
// id falls outside the given documents (either may be null to skip the
// range check on that side).
void ValidateAlignment(const Alignment& alignment, AlignmentCheck check,
                       const Document* src_doc = nullptr,
                       const Document* tgt_doc = nullptr);

Alignment Transpose(const Alignment& alignment);

// --- Corpus and alignment files (JSON lines) -------------------------------

std::vector<Document> ReadCorpus(std::istream& in, std::string_view source);
std::vector<Document> LoadCorpus(const std::string& path);
void WriteCorpus(std::ostream& out, const std::vector<Document>& docs);
std::string SerializeDocument(const Document& doc);

std::vector<Alignment> ReadAlignments(std::istream& in, std::string_view source);
// Loads and validates against the corpora: doc ids must resolve and every
// alignment must pass `check`.
std::vector<Alignment> LoadAlignments(const std::string& path,
                                      const std::vector<Document>& src_docs,
                                      const std::vector<Document>& tgt_docs,
                                      AlignmentCheck check = AlignmentCheck::kStrict);
void WriteAlignments(std::ostream& out, const std::vector<Alignment>& alignments);
std::string SerializeAlignment(const Alignment& alignment);

const Document* FindDocument(const std::vector<Document>& docs,
                             std::string_view doc_id);

}  // namespace spanalign

#endif  // SPANALIGN_CORPUS_H_
