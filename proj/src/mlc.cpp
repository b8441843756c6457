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

#include "stylex/mlc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "json_util.hpp"
#include "stylex/error.hpp"
#include "stylex/numeric.hpp"
#include "stylex/parallel.hpp"
#include "stylex/unicode.hpp"

namespace stylex {

namespace {

using internal::Json;

bool IsSingleWord(const std::string& term) {
  for (const char32_t c : unicode::Decode(term)) {
    if (unicode::Classify(c) == unicode::CharClass::kSpace) return false;
  }
  return true;
}

void CheckLanguage(const Lexicon& lexicon, const EmbeddingTable& table) {
  if (!table.language().empty() && !lexicon.language.empty() &&
      table.language() != lexicon.language) {
    throw ContractError("lexicon language \"" + lexicon.language +
                        "\" does not match embedding language \"" +
                        table.language() + "\"");
  }
}

std::unordered_set<std::string> Members(const Category& category) {
  std::unordered_set<std::string> members;
  for (const auto& term : category.terms) members.insert(unicode::Nfc(term));
  return members;
}

ReportEntry Skip(std::string category, std::string term, ReportReason reason) {
  ReportEntry entry;
  entry.category = std::move(category);
  entry.term = std::move(term);
  entry.action = ReportAction::kSkipped;
  entry.reason = reason;
  return entry;
}

void RequireCorpus(std::span<const ScoredUtterance> corpus, const char* op) {
  if (corpus.empty()) throw ContractError(std::string(op) + ": empty corpus");
}

// Terms matched in each utterance, as [utterance][category] -> term indices
// (one entry per match).
using MatchTable = std::vector<std::vector<std::vector<std::size_t>>>;

MatchTable MatchCorpus(const Lexicon& lexicon,
                       std::span<const ScoredUtterance> corpus,
                       Segmentation segmentation, std::size_t threads) {
  const LexiconMatcher matcher(lexicon, segmentation);
  MatchTable table(corpus.size());
  ParallelFor(corpus.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto& row = table[i];
      row.resize(lexicon.categories.size());
      for (const auto& match : matcher.Match(corpus[i].text)) {
        row[match.category_index].push_back(match.term_index);
      }
    }
  });
  return table;
}

}  // namespace

void MlcConfig::Validate() const {
  auto in_unit = [](double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; };
  if (!in_unit(syn_min_sim)) {
    throw FormatError("mlc config: syn_min_sim must be in (0, 1]");
  }
  if (!in_unit(concept_min_sim)) {
    throw FormatError("mlc config: concept_min_sim must be in (0, 1]");
  }
  if (!std::isfinite(corr_threshold) || corr_threshold < -1.0 ||
      corr_threshold > 1.0) {
    throw FormatError("mlc config: corr_threshold must be in [-1, 1]");
  }
}

MlcConfig LoadMlcConfig(std::string_view json) {
  constexpr std::string_view kWhat = "mlc config";
  const Json doc = internal::ParseJson(json, kWhat);
  if (!doc.is_object()) throw FormatError("mlc config: expected a JSON object");
  MlcConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "syn_min_sim") {
      config.syn_min_sim = internal::RequireNumber(doc, "syn_min_sim", kWhat, 0);
    } else if (key == "concept_min_sim") {
      config.concept_min_sim =
          internal::RequireNumber(doc, "concept_min_sim", kWhat, 0);
    } else if (key == "corr_threshold") {
      config.corr_threshold =
          internal::RequireNumber(doc, "corr_threshold", kWhat, 0);
    } else if (key == "syn_k" || key == "concept_k" ||
               key == "min_occurrences") {
      const long long n = internal::RequireInt(doc, key.c_str(), kWhat, 0);
      if (n < 0) throw FormatError("mlc config: " + key + " must be >= 0");
      const auto count = static_cast<std::size_t>(n);
      if (key == "syn_k") config.syn_k = count;
      if (key == "concept_k") config.concept_k = count;
      if (key == "min_occurrences") config.min_occurrences = count;
    } else {
      throw FormatError("mlc config: unknown field \"" + key + "\"");
    }
  }
  config.Validate();
  return config;
}

std::string SaveMlcConfig(const MlcConfig& config) {
  Json doc = Json::object();
  doc["syn_min_sim"] = config.syn_min_sim;
  doc["concept_min_sim"] = config.concept_min_sim;
  doc["syn_k"] = config.syn_k;
  doc["concept_k"] = config.concept_k;
  doc["min_occurrences"] = config.min_occurrences;
  doc["corr_threshold"] = config.corr_threshold;
  return doc.dump(2) + "\n";
}

std::string_view ToString(ReportAction action) {
  switch (action) {
    case ReportAction::kRemoved: return "removed";
    case ReportAction::kFlagged: return "flagged";
    case ReportAction::kSkipped: return "skipped";
  }
  return "unknown";
}

std::string_view ToString(ReportReason reason) {
  switch (reason) {
    case ReportReason::kRare: return "rare";
    case ReportReason::kUncorrelated: return "uncorrelated";
    case ReportReason::kUndefinedCorrelation: return "undefined_correlation";
    case ReportReason::kEmptySubcorpus: return "empty_subcorpus";
    case ReportReason::kNotInEmbeddings: return "not_in_embeddings";
    case ReportReason::kZeroVector: return "zero_vector";
    case ReportReason::kNoCentroid: return "no_centroid";
  }
  return "unknown";
}

std::vector<ReportEntry> PurificationReport::Removed() const {
  std::vector<ReportEntry> removed;
  for (const auto& entry : entries) {
    if (entry.action == ReportAction::kRemoved) removed.push_back(entry);
  }
  return removed;
}

void PurificationReport::Sort() {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ReportEntry& a, const ReportEntry& b) {
                     if (a.category != b.category) return a.category < b.category;
                     return a.term < b.term;
                   });
}

void PurificationReport::Append(const PurificationReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

std::string PurificationReport::ToJsonLines() const {
  std::string out;
  for (const auto& entry : entries) {
    Json line = Json::object();
    line["category"] = entry.category;
    if (!entry.term.empty()) line["term"] = entry.term;
    line["action"] = ToString(entry.action);
    line["reason"] = ToString(entry.reason);
    if (entry.occurrences) line["occurrences"] = *entry.occurrences;
    if (entry.r) line["r"] = *entry.r;
    out += line.dump();
    out += '\n';
  }
  return out;
}

MlcResult ExpandSynonyms(const Lexicon& seed, const EmbeddingTable& table,
                         const MlcConfig& config, std::size_t threads) {
  config.Validate();
  CheckLanguage(seed, table);
  MlcResult result{seed, {}};
  for (auto& category : result.lexicon.categories) {
    auto members = Members(category);
    const std::vector<std::string> seeds = category.terms;
    for (const auto& word : seeds) {
      if (!IsSingleWord(word)) continue;
      const auto row = table.Find(word);
      if (!row) {
        result.report.entries.push_back(
            Skip(category.name, word, ReportReason::kNotInEmbeddings));
        continue;
      }
      if (!(table.RowNorm(*row) > 0.0)) {
        result.report.entries.push_back(
            Skip(category.name, word, ReportReason::kZeroVector));
        continue;
      }
      if (config.syn_k == 0) continue;
      auto neighbors = Knn(table, table.Vector(*row), config.syn_k + 1,
                           config.syn_min_sim, threads);
      std::erase_if(neighbors, [&](const Neighbor& n) { return n.index == *row; });
      if (neighbors.size() > config.syn_k) neighbors.resize(config.syn_k);
      for (const auto& neighbor : neighbors) {
        if (members.insert(neighbor.word).second) {
          category.terms.push_back(neighbor.word);
        }
      }
    }
  }
  result.report.Sort();
  return result;
}

MlcResult ExpandConcept(const Lexicon& lexicon, const EmbeddingTable& table,
                        const MlcConfig& config, std::size_t threads) {
  config.Validate();
  CheckLanguage(lexicon, table);
  MlcResult result{lexicon, {}};
  for (auto& category : result.lexicon.categories) {
    std::vector<std::string> words;
    for (const auto& term : category.terms) {
      if (IsSingleWord(term) && table.Find(term)) words.push_back(term);
    }
    if (words.empty()) {
      result.report.entries.push_back(
          Skip(category.name, "", ReportReason::kNoCentroid));
      continue;
    }
    const Centroid centroid = ComputeCentroid(table, words);
    double norm = 0.0;
    for (const double x : centroid.vector) norm += x * x;
    if (!(norm > 0.0)) {
      result.report.entries.push_back(
          Skip(category.name, "", ReportReason::kNoCentroid));
      continue;
    }
    if (config.concept_k == 0) continue;
    auto members = Members(category);
    for (const auto& neighbor : Knn(table, centroid.vector, config.concept_k,
                                    config.concept_min_sim, threads)) {
      if (members.insert(neighbor.word).second) {
        category.terms.push_back(neighbor.word);
      }
    }
  }
  result.report.Sort();
  return result;
}

Lexicon UnionLexica(const Lexicon& base, std::span<const Lexicon> additions) {
  for (const auto& addition : additions) {
    if (addition.categories.size() != base.categories.size()) {
      throw ContractError("expansion changed the category set");
    }
  }
  Lexicon merged = base;
  for (auto& category : merged.categories) {
    std::vector<std::string> terms;
    std::unordered_set<std::string> seen;
    auto add = [&](const std::string& term) {
      if (seen.insert(unicode::Nfc(term)).second) terms.push_back(term);
    };
    for (const auto& term : category.terms) add(term);
    for (const auto& addition : additions) {
      const Category* other = addition.Find(category.name);
      if (other == nullptr) {
        throw ContractError("category \"" + category.name +
                            "\" missing from an expansion");
      }
      for (const auto& term : other->terms) add(term);
    }
    category.terms = std::move(terms);
  }
  return merged;
}

std::vector<std::vector<std::size_t>> CountOccurrences(
    const Lexicon& lexicon, std::span<const ScoredUtterance> corpus,
    Segmentation segmentation, std::size_t threads) {
  std::vector<std::vector<std::size_t>> counts(lexicon.categories.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    counts[c].assign(lexicon.categories[c].terms.size(), 0);
  }
  for (const auto& row : MatchCorpus(lexicon, corpus, segmentation, threads)) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      for (const std::size_t t : row[c]) ++counts[c][t];
    }
  }
  return counts;
}

MlcResult FilterRare(const Lexicon& lexicon,
                     std::span<const ScoredUtterance> corpus,
                     Segmentation segmentation, const MlcConfig& config,
                     std::size_t threads) {
  RequireCorpus(corpus, "filter_rare");
  const auto counts = CountOccurrences(lexicon, corpus, segmentation, threads);
  MlcResult result{lexicon, {}};
  for (std::size_t c = 0; c < lexicon.categories.size(); ++c) {
    const auto& source = lexicon.categories[c];
    auto& kept = result.lexicon.categories[c].terms;
    kept.clear();
    for (std::size_t t = 0; t < source.terms.size(); ++t) {
      if (counts[c][t] >= config.min_occurrences) {
        kept.push_back(source.terms[t]);
        continue;
      }
      ReportEntry entry;
      entry.category = source.name;
      entry.term = source.terms[t];
      entry.action = ReportAction::kRemoved;
      entry.reason = ReportReason::kRare;
      entry.occurrences = counts[c][t];
      result.report.entries.push_back(std::move(entry));
    }
  }
  result.report.Sort();
  return result;
}

std::vector<TermCorrelation> TermCorrelations(
    const Lexicon& lexicon, std::span<const ScoredUtterance> corpus,
    Segmentation segmentation, std::size_t threads) {
  const MatchTable matches =
      MatchCorpus(lexicon, corpus, segmentation, threads);
  std::vector<TermCorrelation> out;
  for (std::size_t c = 0; c < lexicon.categories.size(); ++c) {
    std::vector<std::size_t> subcorpus;
    for (std::size_t i = 0; i < matches.size(); ++i) {
      if (!matches[i][c].empty()) subcorpus.push_back(i);
    }
    std::vector<double> scores;
    scores.reserve(subcorpus.size());
    for (const std::size_t i : subcorpus) scores.push_back(corpus[i].score);

    const std::size_t terms = lexicon.categories[c].terms.size();
    std::vector<std::vector<double>> indicator(
        terms, std::vector<double>(subcorpus.size(), 0.0));
    std::vector<std::size_t> occurrences(terms, 0);
    for (std::size_t s = 0; s < subcorpus.size(); ++s) {
      for (const std::size_t t : matches[subcorpus[s]][c]) {
        indicator[t][s] = 1.0;
        ++occurrences[t];
      }
    }
    for (std::size_t t = 0; t < terms; ++t) {
      TermCorrelation tc;
      tc.category_index = c;
      tc.term_index = t;
      tc.occurrences = occurrences[t];
      tc.subcorpus_size = subcorpus.size();
      tc.r = numeric::PearsonCorrelation(indicator[t], scores);
      out.push_back(tc);
    }
  }
  return out;
}

MlcResult FilterUncorrelated(const Lexicon& lexicon,
                             std::span<const ScoredUtterance> corpus,
                             Segmentation segmentation,
                             const MlcConfig& config, std::size_t threads) {
  RequireCorpus(corpus, "filter_uncorrelated");
  config.Validate();
  const auto correlations =
      TermCorrelations(lexicon, corpus, segmentation, threads);
  MlcResult result{lexicon, {}};
  for (auto& category : result.lexicon.categories) category.terms.clear();

  std::vector<bool> empty_subcorpus(lexicon.categories.size(), false);
  for (const auto& tc : correlations) {
    const auto& category = lexicon.categories[tc.category_index];
    const auto& term = category.terms[tc.term_index];
    auto& kept = result.lexicon.categories[tc.category_index].terms;
    if (tc.subcorpus_size == 0) {
      empty_subcorpus[tc.category_index] = true;
      kept.push_back(term);
      continue;
    }
    ReportEntry entry;
    entry.category = category.name;
    entry.term = term;
    entry.occurrences = tc.occurrences;
    entry.r = tc.r;
    if (!tc.r) {
      entry.action = ReportAction::kFlagged;
      entry.reason = ReportReason::kUndefinedCorrelation;
      kept.push_back(term);
      result.report.entries.push_back(std::move(entry));
    } else if (*tc.r < config.corr_threshold) {
      entry.action = ReportAction::kRemoved;
      entry.reason = ReportReason::kUncorrelated;
      result.report.entries.push_back(std::move(entry));
    } else {
      kept.push_back(term);
    }
  }
  for (std::size_t c = 0; c < lexicon.categories.size(); ++c) {
    if (empty_subcorpus[c]) {
      result.report.entries.push_back(Skip(lexicon.categories[c].name, "",
                                           ReportReason::kEmptySubcorpus));
    }
  }
  result.report.Sort();
  return result;
}

MlcResult RunMlc(const Lexicon& seed, const EmbeddingTable& table,
                 std::span<const ScoredUtterance> corpus,
                 Segmentation segmentation, const MlcConfig& config,
                 std::size_t threads) {
  config.Validate();
  RequireCorpus(corpus, "run_mlc");
  const MlcResult synonyms = ExpandSynonyms(seed, table, config, threads);
  const MlcResult concepts = ExpandConcept(seed, table, config, threads);
  const Lexicon additions[] = {synonyms.lexicon, concepts.lexicon};
  const Lexicon expanded = UnionLexica(seed, additions);

  const MlcResult rare =
      FilterRare(expanded, corpus, segmentation, config, threads);
  const MlcResult purified =
      FilterUncorrelated(rare.lexicon, corpus, segmentation, config, threads);

  MlcResult result{purified.lexicon, {}};
  result.report.Append(synonyms.report);
  result.report.Append(concepts.report);
  result.report.Append(rare.report);
  result.report.Append(purified.report);
  result.report.Sort();
  return result;
}

}  // namespace stylex
