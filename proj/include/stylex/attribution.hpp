/*
 * Copyright 2026 The stylex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STYLEX_ATTRIBUTION_HPP_
#define STYLEX_ATTRIBUTION_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stylex/lexicon.hpp"

namespace stylex {

// One model token with its additive attribution. Offsets are code point
// indices into the utterance text, end exclusive.
struct TokenAttribution {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  double value = 0.0;

  // floor((char_start + char_end) / 2); decides which span owns the token.
  std::size_t Midpoint() const { return (char_start + char_end) / 2; }

  bool operator==(const TokenAttribution&) const = default;
};

struct AttributionRecord {
  std::string id;
  std::string language;
  std::string text;
  double label = 0.0;
  double base_value = 0.0;  // stored, never added to span importances
  std::vector<TokenAttribution> tokens;

  std::size_t TextLength() const;

  bool operator==(const AttributionRecord&) const = default;
};

// Throws FormatError unless every token has 0 <= start < end <= text length,
// tokens are sorted by start and do not overlap, and the label is in [-2, 2].
void ValidateRecord(const AttributionRecord& record, std::size_t line = 0);

// JSON lines, one record per line:
// {"id", "language", "text", "label", "base_value",
//  "tokens": [{"text", "start", "end", "value"}, ...]}
// Ids must be unique within the stream.
std::vector<AttributionRecord> LoadRecords(std::istream& in);
std::vector<AttributionRecord> LoadRecordsFile(
    const std::filesystem::path& path);
std::string SaveRecords(std::span<const AttributionRecord> records);

struct SpanImportance {
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  double importance = 0.0;
};

// Sum of the values of the tokens whose midpoint lies in [char_start,
// char_end), added in token order. Any partition of the text therefore
// assigns each token to exactly one span. Throws ContractError on an empty or
// out-of-range span.
SpanImportance ComputeSpanImportance(const AttributionRecord& record,
                                     std::size_t char_start,
                                     std::size_t char_end);

struct WordImportance {
  TermMatch match;
  SpanImportance importance;
};

// One importance per match. Matches of different categories on the same span
// each get the full span importance.
std::vector<WordImportance> ComputeWordImportances(
    const AttributionRecord& record, std::span<const TermMatch> matches);

struct SentenceSpan {
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string act;

  bool operator==(const SentenceSpan&) const = default;
};

struct SentenceImportance {
  std::string act;
  SpanImportance importance;
};

// Sentences must be sorted and non-overlapping (ContractError otherwise).
std::vector<SentenceImportance> ComputeSentenceImportances(
    const AttributionRecord& record, std::span<const SentenceSpan> sentences);

// Dialogue-act annotation of one utterance.
struct ActAnnotation {
  std::string id;
  std::vector<SentenceSpan> sentences;
};

// JSON lines {"id": str, "sentences": [{"start", "end", "act"}, ...]}.
std::vector<ActAnnotation> LoadActs(std::istream& in);
std::vector<ActAnnotation> LoadActsFile(const std::filesystem::path& path);

}  // namespace stylex

#endif  // STYLEX_ATTRIBUTION_HPP_
