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

#include "stylex/aggregation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "json_util.hpp"
#include "stylex/error.hpp"
#include "stylex/numeric.hpp"
#include "stylex/parallel.hpp"

namespace stylex {

namespace {

using internal::Json;

std::unordered_map<std::string, const ActAnnotation*> IndexAnnotations(
    std::span<const ActAnnotation> annotations) {
  std::unordered_map<std::string, const ActAnnotation*> index;
  for (const auto& annotation : annotations) {
    index.emplace(annotation.id, &annotation);
  }
  return index;
}

const ActAnnotation& AnnotationFor(
    const std::unordered_map<std::string, const ActAnnotation*>& index,
    const std::string& id) {
  const auto it = index.find(id);
  if (it == index.end()) {
    throw ContractError("no sentence/act entry for record \"" + id + "\"");
  }
  return *it->second;
}

double Percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0.0;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

CategoryImportance Summarize(std::string name, std::string language,
                             const std::vector<double>& values,
                             std::size_t units, std::size_t total_units) {
  CategoryImportance row;
  row.category = std::move(name);
  row.language = std::move(language);
  row.occurrences = values.size();
  if (!values.empty()) {
    row.importance =
        numeric::BlockedSum(values) / static_cast<double>(values.size());
  }
  row.frequency_pct = Percent(units, total_units);
  return row;
}

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

Granularity ParseGranularity(std::string_view name) {
  if (name == "utterance") return Granularity::kUtterance;
  if (name == "sentence") return Granularity::kSentence;
  throw FormatError("unknown granularity \"" + std::string(name) +
                    "\" (expected utterance or sentence)");
}

std::string_view ToString(Granularity granularity) {
  return granularity == Granularity::kUtterance ? "utterance" : "sentence";
}

std::vector<CategoryImportance> ComputeCategoryImportance(
    std::span<const AttributionRecord> records, const Lexicon& lexicon,
    const CategoryAggregationOptions& options) {
  if (records.empty()) throw ContractError("category_importance: no records");
  for (const auto& record : records) {
    if (!lexicon.language.empty() && record.language != lexicon.language) {
      throw ContractError("record \"" + record.id + "\" is in language \"" +
                          record.language + "\", lexicon is \"" +
                          lexicon.language + "\"");
    }
  }
  const bool by_sentence = options.granularity == Granularity::kSentence;
  const auto annotations = IndexAnnotations(options.sentences);

  struct PerRecord {
    std::vector<WordImportance> words;
    std::vector<std::size_t> units_with_match;  // per category
    std::size_t units = 0;
  };
  const std::size_t categories = lexicon.categories.size();
  const LexiconMatcher matcher(lexicon, options.segmentation);
  std::vector<PerRecord> per_record(records.size());
  ParallelFor(records.size(), options.threads,
              [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& record = records[i];
      auto& out = per_record[i];
      const auto matches = matcher.Match(record.text);
      out.words = ComputeWordImportances(record, matches);
      out.units_with_match.assign(categories, 0);
      if (!by_sentence) {
        out.units = 1;
        for (const auto& match : matches) {
          out.units_with_match[match.category_index] = 1;
        }
        continue;
      }
      const auto& sentences = AnnotationFor(annotations, record.id).sentences;
      out.units = sentences.size();
      for (std::size_t c = 0; c < categories; ++c) {
        for (const auto& sentence : sentences) {
          const bool hit = std::any_of(
              matches.begin(), matches.end(), [&](const TermMatch& m) {
                return m.category_index == c &&
                       m.char_start >= sentence.char_start &&
                       m.char_start < sentence.char_end;
              });
          if (hit) ++out.units_with_match[c];
        }
      }
    }
  });

  std::vector<std::vector<double>> values(categories);
  std::vector<std::size_t> units_with_match(categories, 0);
  std::size_t total_units = 0;
  for (const auto& r : per_record) {
    for (const auto& word : r.words) {
      values[word.match.category_index].push_back(word.importance.importance);
    }
    for (std::size_t c = 0; c < categories; ++c) {
      units_with_match[c] += r.units_with_match[c];
    }
    total_units += r.units;
  }
  if (by_sentence && total_units == 0) {
    throw ContractError("category_importance: no annotated sentences");
  }

  std::vector<CategoryImportance> rows;
  rows.reserve(categories);
  for (std::size_t c = 0; c < categories; ++c) {
    rows.push_back(Summarize(lexicon.categories[c].name, lexicon.language,
                             values[c], units_with_match[c], total_units));
  }
  return rows;
}

std::vector<CategoryImportance> ComputeActImportance(
    std::span<const AttributionRecord> records,
    std::span<const ActAnnotation> annotations, std::string_view language,
    std::span<const std::string> acts, std::size_t threads) {
  if (records.empty()) throw ContractError("act_importance: no records");
  for (const auto& record : records) {
    if (record.language != language) {
      throw ContractError("record \"" + record.id + "\" is in language \"" +
                          record.language + "\", expected \"" +
                          std::string(language) + "\"");
    }
  }
  const auto index = IndexAnnotations(annotations);
  std::vector<std::vector<SentenceImportance>> per_record(records.size());
  ParallelFor(records.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      per_record[i] = ComputeSentenceImportances(
          records[i], AnnotationFor(index, records[i].id).sentences);
    }
  });

  std::vector<std::string> order(acts.begin(), acts.end());
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t a = 0; a < order.size(); ++a) slot.emplace(order[a], a);
  std::vector<std::vector<double>> values(order.size());
  std::size_t total = 0;
  for (const auto& sentences : per_record) {
    for (const auto& sentence : sentences) {
      auto [it, inserted] = slot.try_emplace(sentence.act, order.size());
      if (inserted) {
        order.push_back(sentence.act);
        values.emplace_back();
      }
      values[it->second].push_back(sentence.importance.importance);
      ++total;
    }
  }

  std::vector<CategoryImportance> rows;
  rows.reserve(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    rows.push_back(Summarize(order[a], std::string(language), values[a],
                             values[a].size(), total));
  }
  return rows;
}

ComparisonReport Compare(std::span<const LanguageImportances> reports,
                         std::span<const std::string> row_set,
                         ComparisonMetadata metadata) {
  if (reports.size() < 2) {
    throw ContractError("compare: need at least two languages");
  }
  ComparisonReport report;
  report.metadata = std::move(metadata);
  std::set<std::string> seen_languages;
  for (const auto& r : reports) {
    if (!seen_languages.insert(r.language).second) {
      throw ContractError("compare: duplicate language \"" + r.language + "\"");
    }
    report.languages.push_back(r.language);
  }
  if (!row_set.empty()) {
    report.rows.assign(row_set.begin(), row_set.end());
  } else {
    std::set<std::string> seen_rows;
    for (const auto& r : reports) {
      for (const auto& row : r.rows) {
        if (seen_rows.insert(row.category).second) {
          report.rows.push_back(row.category);
        }
      }
    }
  }

  report.cells.resize(report.rows.size() * report.languages.size());
  for (std::size_t l = 0; l < reports.size(); ++l) {
    std::map<std::string, const CategoryImportance*> by_name;
    for (const auto& row : reports[l].rows) by_name.emplace(row.category, &row);
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      const auto it = by_name.find(report.rows[r]);
      if (it == by_name.end()) continue;
      auto& cell = report.cells[r * report.languages.size() + l];
      cell.present = true;
      cell.importance = it->second->importance;
      cell.occurrences = it->second->occurrences;
      cell.frequency_pct = it->second->frequency_pct;
    }
  }
  return report;
}

std::string ComparisonReport::ToCsv() const {
  std::string out = "row,language,importance,occurrences,frequency_pct\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t l = 0; l < languages.size(); ++l) {
      const auto& cell = At(r, l);
      out += CsvField(rows[r]);
      out += ',';
      out += CsvField(languages[l]);
      out += ',';
      if (cell.present) {
        if (cell.importance) out += internal::FormatDouble(*cell.importance);
        out += ',';
        out += std::to_string(cell.occurrences);
        out += ',';
        out += internal::FormatDouble(cell.frequency_pct);
      } else {
        out += ",,";
      }
      out += '\n';
    }
  }
  return out;
}

std::string ComparisonReport::ToJson() const {
  Json doc = Json::object();
  Json meta = Json::object();
  meta["kind"] = metadata.kind;
  meta["granularity"] = ToString(metadata.granularity);
  meta["datasets"] = metadata.datasets;
  meta["config_hash"] = metadata.config_hash;
  doc["metadata"] = std::move(meta);
  doc["languages"] = languages;
  Json json_rows = Json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Json cells = Json::array();
    for (std::size_t l = 0; l < languages.size(); ++l) {
      const auto& cell = At(r, l);
      Json c = Json::object();
      c["language"] = languages[l];
      c["present"] = cell.present;
      if (cell.present) {
        c["importance"] = cell.importance ? Json(*cell.importance) : Json(nullptr);
        c["occurrences"] = cell.occurrences;
        c["frequency_pct"] = cell.frequency_pct;
      }
      cells.push_back(std::move(c));
    }
    Json row = Json::object();
    row["row"] = rows[r];
    row["cells"] = std::move(cells);
    json_rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(json_rows);
  return doc.dump(2) + "\n";
}

}  // namespace stylex
