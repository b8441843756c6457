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

// Multilingual lexicon creation: grow a machine-translated seed lexicon with
// embedding neighbors (synonym and concept expansion), then purify it against
// a scored corpus (rare-term and correlation filters).

#ifndef STYLEX_MLC_HPP_
#define STYLEX_MLC_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylex/corpus.hpp"
#include "stylex/embeddings.hpp"
#include "stylex/lexicon.hpp"

namespace stylex {

struct MlcConfig {
  double syn_min_sim = 0.60;      // minimum cosine for synonym neighbors
  double concept_min_sim = 0.50;  // minimum cosine for centroid neighbors
  std::size_t syn_k = 10;         // neighbors considered per seed word
  std::size_t concept_k = 25;     // neighbors considered per centroid
  std::size_t min_occurrences = 3;
  double corr_threshold = 0.15;

  // Throws FormatError if a field is out of range.
  void Validate() const;

  bool operator==(const MlcConfig&) const = default;
};

// JSON object with any subset of the MlcConfig field names; absent fields keep
// their defaults, unknown fields are rejected.
MlcConfig LoadMlcConfig(std::string_view json);
std::string SaveMlcConfig(const MlcConfig& config);

enum class ReportAction { kRemoved, kFlagged, kSkipped };

enum class ReportReason {
  kRare,                  // removed: fewer than min_occurrences matches
  kUncorrelated,          // removed: r below corr_threshold
  kUndefinedCorrelation,  // flagged, kept: zero variance in indicator or score
  kEmptySubcorpus,        // skipped category: no utterance matches it
  kNotInEmbeddings,       // skipped seed word during expansion
  kZeroVector,            // skipped seed word with an all-zero vector
  kNoCentroid,            // skipped category during concept expansion
};

std::string_view ToString(ReportAction action);
std::string_view ToString(ReportReason reason);

struct ReportEntry {
  std::string category;
  std::string term;  // empty for category-level entries
  ReportAction action = ReportAction::kRemoved;
  ReportReason reason = ReportReason::kRare;
  std::optional<std::size_t> occurrences;
  std::optional<double> r;

  bool operator==(const ReportEntry&) const = default;
};

struct PurificationReport {
  std::vector<ReportEntry> entries;

  std::vector<ReportEntry> Removed() const;
  // Stable sort by category name, then term.
  void Sort();
  void Append(const PurificationReport& other);
  // One JSON object per line.
  std::string ToJsonLines() const;
};

struct MlcResult {
  Lexicon lexicon;
  PurificationReport report;
};

// Appends up to syn_k nearest neighbors (cosine >= syn_min_sim) of every
// single-word seed term found in the table. The word itself does not take a
// neighbor slot; neighbors already in the category take a slot but are not
// added twice. Phrases are kept and not expanded.
MlcResult ExpandSynonyms(const Lexicon& seed, const EmbeddingTable& table,
                         const MlcConfig& config, std::size_t threads = 1);

// Appends the up to concept_k nearest neighbors (cosine >= concept_min_sim) of
// each category centroid, computed over the category's single-word terms that
// are in the table, minus existing members.
MlcResult ExpandConcept(const Lexicon& lexicon, const EmbeddingTable& table,
                        const MlcConfig& config, std::size_t threads = 1);

// Per category: terms of `base`, then new terms of each addition in order,
// de-duplicated after NFC normalization. Category names must agree.
Lexicon UnionLexica(const Lexicon& base, std::span<const Lexicon> additions);

// Match count of every term over the corpus, indexed [category][term].
std::vector<std::vector<std::size_t>> CountOccurrences(
    const Lexicon& lexicon, std::span<const ScoredUtterance> corpus,
    Segmentation segmentation, std::size_t threads = 1);

// Removes terms matched fewer than min_occurrences times. Throws
// ContractError on an empty corpus.
MlcResult FilterRare(const Lexicon& lexicon,
                     std::span<const ScoredUtterance> corpus,
                     Segmentation segmentation, const MlcConfig& config,
                     std::size_t threads = 1);

// Point-biserial correlation of a term with its category's scores: over the
// utterances that contain any term of category C, correlate the indicator
// "utterance contains w" with the style score. Empty when undefined.
struct TermCorrelation {
  std::size_t category_index = 0;
  std::size_t term_index = 0;
  std::size_t occurrences = 0;
  std::size_t subcorpus_size = 0;
  std::optional<double> r;
};
std::vector<TermCorrelation> TermCorrelations(
    const Lexicon& lexicon, std::span<const ScoredUtterance> corpus,
    Segmentation segmentation, std::size_t threads = 1);

// Removes every term with r < corr_threshold. Terms with undefined r are kept
// and flagged; categories with an empty subcorpus are kept and reported. All
// decisions are taken against the input lexicon in a single pass.
MlcResult FilterUncorrelated(const Lexicon& lexicon,
                             std::span<const ScoredUtterance> corpus,
                             Segmentation segmentation,
                             const MlcConfig& config, std::size_t threads = 1);

// Synonym and concept expansion of the seed, union, then the rare-term and
// correlation filters. The category name list never changes.
MlcResult RunMlc(const Lexicon& seed, const EmbeddingTable& table,
                 std::span<const ScoredUtterance> corpus,
                 Segmentation segmentation, const MlcConfig& config,
                 std::size_t threads = 1);

}  // namespace stylex

#endif  // STYLEX_MLC_HPP_
