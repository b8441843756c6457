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

// Category-level and dialogue-act-level importances, and the cross-language
// comparison grid built from them.

#ifndef STYLEX_AGGREGATION_HPP_
#define STYLEX_AGGREGATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylex/attribution.hpp"
#include "stylex/lexicon.hpp"

namespace stylex {

// Unit for frequency_pct: share of utterances or of annotated sentences.
enum class Granularity { kUtterance, kSentence };

Granularity ParseGranularity(std::string_view name);
std::string_view ToString(Granularity granularity);

struct CategoryImportance {
  std::string category;  // lexical category or dialogue act
  std::string language;
  std::optional<double> importance;  // empty when occurrences == 0
  std::size_t occurrences = 0;
  double frequency_pct = 0.0;

  bool operator==(const CategoryImportance&) const = default;
};

struct CategoryAggregationOptions {
  Segmentation segmentation = Segmentation::kWhitespace;
  Granularity granularity = Granularity::kUtterance;
  // Sentence spans per record id; required for Granularity::kSentence.
  std::span<const ActAnnotation> sentences;
  std::size_t threads = 1;
};

// For each category C: N = number of term matches over all records, and
// importance = (sum of the word importances of those matches) / N. Word
// importances are accumulated in record order, then match order, with a
// compensated sum, so results do not depend on the thread count. One row per
// lexicon category, in lexicon order.
std::vector<CategoryImportance> ComputeCategoryImportance(
    std::span<const AttributionRecord> records, const Lexicon& lexicon,
    const CategoryAggregationOptions& options);

// Each dialogue act is a category whose occurrences are sentences: N is the
// number of sentences labeled with the act, importance the mean sentence
// importance, frequency the share of all sentences. Rows follow `acts` when
// given (absent acts get N = 0), then any other act in order of first
// appearance. Throws ContractError when a record has no annotation.
std::vector<CategoryImportance> ComputeActImportance(
    std::span<const AttributionRecord> records,
    std::span<const ActAnnotation> annotations, std::string_view language,
    std::span<const std::string> acts = {}, std::size_t threads = 1);

struct LanguageImportances {
  std::string language;
  std::vector<CategoryImportance> rows;
};

struct ComparisonCell {
  bool present = false;  // false: the row does not exist in that language
  std::optional<double> importance;
  std::size_t occurrences = 0;
  double frequency_pct = 0.0;
};

struct ComparisonMetadata {
  std::string kind = "category";  // "category" or "act"
  Granularity granularity = Granularity::kUtterance;
  std::vector<std::string> datasets;
  std::string config_hash;
};

struct ComparisonReport {
  ComparisonMetadata metadata;
  std::vector<std::string> rows;
  std::vector<std::string> languages;
  std::vector<ComparisonCell> cells;  // row-major: rows x languages

  const ComparisonCell& At(std::size_t row, std::size_t language) const {
    return cells[row * languages.size() + language];
  }

  // Header "row,language,importance,occurrences,frequency_pct". Empty
  // importance means N = 0; an entirely empty cell means absent.
  std::string ToCsv() const;
  std::string ToJson() const;
};

// Aligns per-language rows into a grid. `row_set` fixes the row order; when
// empty, rows are the union over languages in order of first appearance.
// Throws ContractError for fewer than two languages or a repeated language.
ComparisonReport Compare(std::span<const LanguageImportances> reports,
                         std::span<const std::string> row_set = {},
                         ComparisonMetadata metadata = {});

}  // namespace stylex

#endif  // STYLEX_AGGREGATION_HPP_
