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

#include "stylex/attribution.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "json_util.hpp"
#include "stylex/corpus.hpp"
#include "stylex/error.hpp"
#include "stylex/unicode.hpp"

namespace stylex {

namespace {

using internal::Json;

std::size_t RequireOffset(const Json& object, const char* key,
                          std::string_view what, std::size_t line) {
  const long long value = internal::RequireInt(object, key, what, line);
  if (value < 0) {
    throw FormatError(std::string(what) + ": \"" + key + "\" must be >= 0",
                      line);
  }
  return static_cast<std::size_t>(value);
}

void CheckSpan(const AttributionRecord& record, std::size_t char_start,
               std::size_t char_end, std::size_t length) {
  if (char_start >= char_end || char_end > length) {
    throw ContractError("record \"" + record.id + "\": invalid span [" +
                        std::to_string(char_start) + ", " +
                        std::to_string(char_end) + ") for text of length " +
                        std::to_string(length));
  }
}

void CheckSentenceOrder(std::span<const SentenceSpan> sentences,
                        const std::string& id) {
  for (std::size_t i = 1; i < sentences.size(); ++i) {
    if (sentences[i].char_start < sentences[i - 1].char_end) {
      throw ContractError("utterance \"" + id +
                          "\": overlapping or unsorted sentence spans");
    }
  }
}

template <class Loader>
auto OpenAndLoad(const std::filesystem::path& path, const char* what,
                 Loader&& load) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + what + ": " + path.string());
  try {
    return load(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::size_t AttributionRecord::TextLength() const {
  return unicode::CodePointLength(text);
}

void ValidateRecord(const AttributionRecord& record, std::size_t line) {
  const std::string where = "record \"" + record.id + "\"";
  if (record.id.empty()) throw FormatError("record: empty id", line);
  if (!(record.label >= kMinStyleScore && record.label <= kMaxStyleScore)) {
    throw FormatError(where + ": label outside [-2, 2]", line);
  }
  const std::size_t length = record.TextLength();
  std::size_t previous_end = 0;
  for (std::size_t i = 0; i < record.tokens.size(); ++i) {
    const auto& token = record.tokens[i];
    if (token.char_start >= token.char_end || token.char_end > length) {
      throw FormatError(where + ": token " + std::to_string(i) +
                            " span out of bounds",
                        line);
    }
    if (i > 0 && token.char_start < record.tokens[i - 1].char_start) {
      throw FormatError(where + ": tokens not sorted by start", line);
    }
    if (i > 0 && token.char_start < previous_end) {
      throw FormatError(where + ": overlapping token spans", line);
    }
    previous_end = token.char_end;
  }
}

std::vector<AttributionRecord> LoadRecords(std::istream& in) {
  constexpr std::string_view kWhat = "attribution record";
  std::vector<AttributionRecord> records;
  std::unordered_set<std::string> ids;
  internal::ForEachLine(in, [&](std::string_view text, std::size_t line) {
    const Json doc = internal::ParseJson(text, kWhat, line);
    AttributionRecord record;
    record.id = internal::RequireString(doc, "id", kWhat, line);
    record.language = internal::RequireString(doc, "language", kWhat, line);
    record.text = internal::RequireString(doc, "text", kWhat, line);
    record.label = internal::RequireNumber(doc, "label", kWhat, line);
    record.base_value = internal::RequireNumber(doc, "base_value", kWhat, line);
    const Json& tokens = internal::Require(doc, "tokens", kWhat, line);
    if (!tokens.is_array()) {
      throw FormatError("attribution record: \"tokens\" must be an array", line);
    }
    record.tokens.reserve(tokens.size());
    for (const auto& token : tokens) {
      TokenAttribution t;
      t.text = internal::RequireString(token, "text", kWhat, line);
      t.char_start = RequireOffset(token, "start", kWhat, line);
      t.char_end = RequireOffset(token, "end", kWhat, line);
      t.value = internal::RequireNumber(token, "value", kWhat, line);
      record.tokens.push_back(std::move(t));
    }
    ValidateRecord(record, line);
    if (!ids.insert(record.id).second) {
      throw FormatError("duplicate record id \"" + record.id + "\"", line);
    }
    records.push_back(std::move(record));
  });
  return records;
}

std::vector<AttributionRecord> LoadRecordsFile(
    const std::filesystem::path& path) {
  return OpenAndLoad(path, "attribution records",
                     [](std::istream& in) { return LoadRecords(in); });
}

std::string SaveRecords(std::span<const AttributionRecord> records) {
  std::string out;
  for (const auto& record : records) {
    Json doc = Json::object();
    doc["id"] = record.id;
    doc["language"] = record.language;
    doc["text"] = record.text;
    doc["label"] = record.label;
    doc["base_value"] = record.base_value;
    Json tokens = Json::array();
    for (const auto& token : record.tokens) {
      Json t = Json::object();
      t["text"] = token.text;
      t["start"] = token.char_start;
      t["end"] = token.char_end;
      t["value"] = token.value;
      tokens.push_back(std::move(t));
    }
    doc["tokens"] = std::move(tokens);
    out += doc.dump();
    out += '\n';
  }
  return out;
}

SpanImportance ComputeSpanImportance(const AttributionRecord& record,
                                     std::size_t char_start,
                                     std::size_t char_end) {
  CheckSpan(record, char_start, char_end, record.TextLength());
  // Midpoints strictly increase along the sorted, non-overlapping tokens.
  const auto& tokens = record.tokens;
  auto it = std::ranges::lower_bound(tokens, char_start, {},
                                     &TokenAttribution::Midpoint);
  SpanImportance result{char_start, char_end, 0.0};
  for (; it != tokens.end() && it->Midpoint() < char_end; ++it) {
    result.importance += it->value;
  }
  return result;
}

std::vector<WordImportance> ComputeWordImportances(
    const AttributionRecord& record, std::span<const TermMatch> matches) {
  std::vector<WordImportance> out;
  out.reserve(matches.size());
  for (const auto& match : matches) {
    out.push_back(
        {match, ComputeSpanImportance(record, match.char_start, match.char_end)});
  }
  return out;
}

std::vector<SentenceImportance> ComputeSentenceImportances(
    const AttributionRecord& record, std::span<const SentenceSpan> sentences) {
  CheckSentenceOrder(sentences, record.id);
  std::vector<SentenceImportance> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    out.push_back({sentence.act,
                   ComputeSpanImportance(record, sentence.char_start,
                                         sentence.char_end)});
  }
  return out;
}

std::vector<ActAnnotation> LoadActs(std::istream& in) {
  constexpr std::string_view kWhat = "acts";
  std::vector<ActAnnotation> acts;
  std::unordered_set<std::string> ids;
  internal::ForEachLine(in, [&](std::string_view text, std::size_t line) {
    const Json doc = internal::ParseJson(text, kWhat, line);
    ActAnnotation annotation;
    annotation.id = internal::RequireString(doc, "id", kWhat, line);
    const Json& sentences = internal::Require(doc, "sentences", kWhat, line);
    if (!sentences.is_array()) {
      throw FormatError("acts: \"sentences\" must be an array", line);
    }
    for (const auto& s : sentences) {
      SentenceSpan span;
      span.char_start = RequireOffset(s, "start", kWhat, line);
      span.char_end = RequireOffset(s, "end", kWhat, line);
      span.act = internal::RequireString(s, "act", kWhat, line);
      if (span.char_start >= span.char_end) {
        throw FormatError("acts: empty sentence span", line);
      }
      annotation.sentences.push_back(std::move(span));
    }
    try {
      CheckSentenceOrder(annotation.sentences, annotation.id);
    } catch (const ContractError& e) {
      throw FormatError(std::string("acts: ") + e.what(), line);
    }
    if (!ids.insert(annotation.id).second) {
      throw FormatError("acts: duplicate id \"" + annotation.id + "\"", line);
    }
    acts.push_back(std::move(annotation));
  });
  return acts;
}

std::vector<ActAnnotation> LoadActsFile(const std::filesystem::path& path) {
  return OpenAndLoad(path, "acts file",
                     [](std::istream& in) { return LoadActs(in); });
}

}  // namespace stylex
