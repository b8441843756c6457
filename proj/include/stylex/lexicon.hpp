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

#ifndef STYLEX_LEXICON_HPP_
#define STYLEX_LEXICON_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylex {

// How lexicon terms are located in text.
//   kWhitespace: terms are token sequences; tokens are maximal runs of word
//     characters, and every punctuation or symbol character is a token of its
//     own. Matching is case-insensitive (simple case folding).
//   kSubstring: terms match any code point substring, exactly. For scripts
//     written without spaces (Chinese, Japanese).
enum class Segmentation { kWhitespace, kSubstring };

Segmentation ParseSegmentation(std::string_view name);
std::string_view ToString(Segmentation segmentation);

struct Category {
  std::string name;
  std::vector<std::string> terms;  // may contain phrases ("thank you")

  bool operator==(const Category&) const = default;
};

struct Lexicon {
  std::string language;
  std::vector<Category> categories;

  const Category* Find(std::string_view name) const;
  std::vector<std::string> CategoryNames() const;
  std::size_t TermCount() const;

  bool operator==(const Lexicon&) const = default;
};

// Throws FormatError if a category name repeats, a term is empty or blank, or
// a term repeats within its category after NFC normalization.
void ValidateLexicon(const Lexicon& lexicon);

// JSON schema: {"language": str, "categories": {name: [term, ...], ...}}.
// Category order is preserved. SaveLexicon emits the canonical form (2-space
// indent, trailing newline), so canonical files round-trip byte for byte.
Lexicon LoadLexicon(std::string_view json);
Lexicon LoadLexiconFile(const std::filesystem::path& path);
std::string SaveLexicon(const Lexicon& lexicon);

// One occurrence of a category term. Offsets are code point indices into the
// text handed to the matcher, end exclusive.
struct TermMatch {
  std::size_t category_index = 0;
  std::size_t term_index = 0;
  std::string category;
  std::string term;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const TermMatch&) const = default;
};

// Compiled form of a lexicon for repeated matching. Immutable and safe to share
// between threads.
//
// Text is NFC normalized before matching; offsets are mapped back to the text
// as given. Within a category, matches are non-overlapping and chosen greedily
// left to right, preferring the longest term at each position. Matches of
// different categories may overlap. Results are ordered by category, then by
// position.
class LexiconMatcher {
 public:
  LexiconMatcher(const Lexicon& lexicon, Segmentation segmentation);
  ~LexiconMatcher();
  LexiconMatcher(LexiconMatcher&&) noexcept;
  LexiconMatcher& operator=(LexiconMatcher&&) noexcept;

  std::vector<TermMatch> Match(std::string_view text) const;

  // True if any term of any category occurs in the text.
  bool Covers(std::string_view text) const;

  const Lexicon& lexicon() const;
  Segmentation segmentation() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<TermMatch> Match(const Lexicon& lexicon, std::string_view text,
                             Segmentation segmentation);

struct CoverageStat {
  std::size_t covered = 0;
  std::size_t total = 0;
  double percent = 0.0;  // 100 * covered / total
};

// Share of utterances containing at least one term of any category. Throws
// ContractError on an empty corpus.
CoverageStat Coverage(const Lexicon& lexicon,
                      std::span<const std::string> corpus,
                      Segmentation segmentation, std::size_t threads = 1);

}  // namespace stylex

#endif  // STYLEX_LEXICON_HPP_
