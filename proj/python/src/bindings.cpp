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


#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "stylex/aggregation.hpp"
#include "stylex/attribution.hpp"
#include "stylex/cli.hpp"
#include "stylex/corpus.hpp"
#include "stylex/embeddings.hpp"
#include "stylex/error.hpp"
#include "stylex/lexicon.hpp"
#include "stylex/mlc.hpp"

namespace py = pybind11;
using namespace stylex;

namespace {

Segmentation Seg(const std::string& name) { return ParseSegmentation(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Style lexica, lexicon matching and attribution aggregation.";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<IoError>(m, "IoError", error);
  py::register_exception<FormatError>(m, "FormatError", error);
  py::register_exception<ContractError>(m, "ContractError", error);

  // Embeddings.
  py::class_<Neighbor>(m, "Neighbor")
      .def_readonly("word", &Neighbor::word)
      .def_readonly("similarity", &Neighbor::similarity)
      .def_readonly("index", &Neighbor::index)
      .def("__repr__", [](const Neighbor& n) {
        return "Neighbor(" + n.word + ", " + std::to_string(n.similarity) + ")";
      });

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def(py::init<std::size_t, std::vector<std::string>, std::vector<float>>(),
           py::arg("dim"), py::arg("vocab"), py::arg("values"))
      .def_static("load", &EmbeddingTable::LoadFile, py::arg("path"))
      .def_property_readonly("dim", &EmbeddingTable::dim)
      .def_property_readonly("vocab", &EmbeddingTable::vocab)
      .def_property_readonly("duplicates", &EmbeddingTable::duplicates)
      .def_property("language", &EmbeddingTable::language,
                    &EmbeddingTable::set_language)
      .def("__len__", &EmbeddingTable::size)
      .def("find", &EmbeddingTable::Find, py::arg("word"))
      .def("vector", &EmbeddingTable::Vector, py::arg("index"))
      .def("knn",
           [](const EmbeddingTable& t, const std::vector<double>& query,
              std::size_t k, double min_sim, std::size_t threads) {
             py::gil_scoped_release release;
             return Knn(t, query, k, min_sim, threads);
           },
           py::arg("query"), py::arg("k"), py::arg("min_sim") = -1.0,
           py::arg("threads") = 1)
      .def("dumps", [](const EmbeddingTable& t) {
        std::ostringstream out;
        t.Save(out);
        return out.str();
      });

  m.def("cosine",
        [](const std::vector<double>& u, const std::vector<double>& v) {
          return Cosine(u, v);
        },
        py::arg("u"), py::arg("v"));
  m.def("centroid",
        [](const EmbeddingTable& t, const std::vector<std::string>& words) {
          auto c = ComputeCentroid(t, words);
          return py::make_tuple(c.vector, c.missing);
        },
        py::arg("table"), py::arg("words"),
        "Returns (vector, missing_words).");

  // Lexica.
  py::class_<Category>(m, "Category")
      .def(py::init<std::string, std::vector<std::string>>(), py::arg("name"),
           py::arg("terms"))
      .def_readwrite("name", &Category::name)
      .def_readwrite("terms", &Category::terms)
      .def(py::self == py::self);

  py::class_<Lexicon>(m, "Lexicon")
      .def(py::init<std::string, std::vector<Category>>(), py::arg("language"),
           py::arg("categories"))
      .def_readwrite("language", &Lexicon::language)
      .def_readwrite("categories", &Lexicon::categories)
      .def("find", &Lexicon::Find, py::arg("name"),
           py::return_value_policy::reference_internal)
      .def("category_names", &Lexicon::CategoryNames)
      .def("term_count", &Lexicon::TermCount)
      .def(py::self == py::self);

  m.def("load_lexicon", &LoadLexiconFile, py::arg("path"));
  m.def("loads_lexicon", [](const std::string& s) { return LoadLexicon(s); },
        py::arg("text"));
  m.def("dumps_lexicon", &SaveLexicon, py::arg("lexicon"));
  m.def("validate_lexicon", &ValidateLexicon, py::arg("lexicon"));

  py::class_<TermMatch>(m, "TermMatch")
      .def_readonly("category", &TermMatch::category)
      .def_readonly("term", &TermMatch::term)
      .def_readonly("category_index", &TermMatch::category_index)
      .def_readonly("term_index", &TermMatch::term_index)
      .def_readonly("char_start", &TermMatch::char_start)
      .def_readonly("char_end", &TermMatch::char_end);

  m.def("match",
        [](const Lexicon& lex, const std::string& text, const std::string& seg) {
          return Match(lex, text, Seg(seg));
        },
        py::arg("lexicon"), py::arg("text"), py::arg("segmentation") = "whitespace");

  py::class_<CoverageStat>(m, "CoverageStat")
      .def_readonly("covered", &CoverageStat::covered)
      .def_readonly("total", &CoverageStat::total)
      .def_readonly("percent", &CoverageStat::percent);
  m.def("coverage",
        [](const Lexicon& lex, const std::vector<std::string>& corpus,
           const std::string& seg, std::size_t threads) {
          return Coverage(lex, corpus, Seg(seg), threads);
        },
        py::arg("lexicon"), py::arg("corpus"),
        py::arg("segmentation") = "whitespace", py::arg("threads") = 1);

  // Corpora and lexicon creation.
  py::class_<ScoredUtterance>(m, "ScoredUtterance")
      .def(py::init([](std::string id, std::string text, double score) {
             return ScoredUtterance{std::move(id), std::move(text), score};
           }),
           py::arg("id"), py::arg("text"), py::arg("score"))
      .def_readwrite("id", &ScoredUtterance::id)
      .def_readwrite("text", &ScoredUtterance::text)
      .def_readwrite("score", &ScoredUtterance::score);
  m.def("load_scored_corpus", &LoadScoredCorpusFile, py::arg("path"));
  m.def("load_corpus",
        [](const std::filesystem::path& path) {
          std::vector<std::pair<std::string, std::string>> out;
          for (auto& u : LoadCorpusFile(path)) out.emplace_back(u.id, u.text);
          return out;
        },
        py::arg("path"), "Returns [(id, text), ...].");

  py::class_<MlcConfig>(m, "MlcConfig")
      .def(py::init<>())
      .def_readwrite("syn_min_sim", &MlcConfig::syn_min_sim)
      .def_readwrite("concept_min_sim", &MlcConfig::concept_min_sim)
      .def_readwrite("syn_k", &MlcConfig::syn_k)
      .def_readwrite("concept_k", &MlcConfig::concept_k)
      .def_readwrite("min_occurrences", &MlcConfig::min_occurrences)
      .def_readwrite("corr_threshold", &MlcConfig::corr_threshold)
      .def("validate", &MlcConfig::Validate)
      .def_static("loads", [](const std::string& s) { return LoadMlcConfig(s); })
      .def("dumps", [](const MlcConfig& c) { return SaveMlcConfig(c); });

  m.def("run_mlc",
        [](const Lexicon& seed, const EmbeddingTable& table,
           const std::vector<ScoredUtterance>& corpus, const MlcConfig& config,
           const std::string& seg, std::size_t threads) {
          MlcResult result;
          {
            py::gil_scoped_release release;
            result = RunMlc(seed, table, corpus, Seg(seg), config, threads);
          }
          return py::make_tuple(result.lexicon, result.report.ToJsonLines());
        },
        py::arg("seed"), py::arg("table"), py::arg("corpus"),
        py::arg("config") = MlcConfig{}, py::arg("segmentation") = "whitespace",
        py::arg("threads") = 1,
        "Returns (lexicon, purification report as JSON lines).");

  // Attributions and aggregation.
  py::class_<TokenAttribution>(m, "TokenAttribution")
      .def(py::init([](std::string text, std::size_t start, std::size_t end,
                       double value) {
             return TokenAttribution{std::move(text), start, end, value};
           }),
           py::arg("text"), py::arg("start"), py::arg("end"), py::arg("value"))
      .def_readwrite("text", &TokenAttribution::text)
      .def_readwrite("start", &TokenAttribution::char_start)
      .def_readwrite("end", &TokenAttribution::char_end)
      .def_readwrite("value", &TokenAttribution::value);

  py::class_<AttributionRecord>(m, "AttributionRecord")
      .def(py::init<>())
      .def_readwrite("id", &AttributionRecord::id)
      .def_readwrite("language", &AttributionRecord::language)
      .def_readwrite("text", &AttributionRecord::text)
      .def_readwrite("label", &AttributionRecord::label)
      .def_readwrite("base_value", &AttributionRecord::base_value)
      .def_readwrite("tokens", &AttributionRecord::tokens);

  m.def("load_records", &LoadRecordsFile, py::arg("path"));
  m.def("loads_records",
        [](const std::string& text) {
          std::istringstream in(text);
          return LoadRecords(in);
        },
        py::arg("text"));
  m.def("dumps_records",
        [](const std::vector<AttributionRecord>& r) { return SaveRecords(r); },
        py::arg("records"));
  m.def("validate_record",
        [](const AttributionRecord& r) { ValidateRecord(r); },
        py::arg("record"));
  m.def("span_importance",
        [](const AttributionRecord& r, std::size_t start, std::size_t end) {
          return ComputeSpanImportance(r, start, end).importance;
        },
        py::arg("record"), py::arg("start"), py::arg("end"));

  py::class_<ActAnnotation>(m, "ActAnnotation")
      .def_readonly("id", &ActAnnotation::id)
      .def_property_readonly("sentences", [](const ActAnnotation& a) {
        std::vector<py::tuple> out;
        for (const auto& s : a.sentences) {
          out.push_back(py::make_tuple(s.char_start, s.char_end, s.act));
        }
        return out;
      });
  m.def("load_acts", &LoadActsFile, py::arg("path"));

  py::class_<CategoryImportance>(m, "CategoryImportance")
      .def_readonly("category", &CategoryImportance::category)
      .def_readonly("language", &CategoryImportance::language)
      .def_readonly("importance", &CategoryImportance::importance)
      .def_readonly("occurrences", &CategoryImportance::occurrences)
      .def_readonly("frequency_pct", &CategoryImportance::frequency_pct);

  m.def("category_importance",
        [](const std::vector<AttributionRecord>& records, const Lexicon& lex,
           const std::string& seg, const std::string& granularity,
           const std::vector<ActAnnotation>& sentences, std::size_t threads) {
          CategoryAggregationOptions options;
          options.segmentation = Seg(seg);
          options.granularity = ParseGranularity(granularity);
          options.sentences = sentences;
          options.threads = threads;
          py::gil_scoped_release release;
          return ComputeCategoryImportance(records, lex, options);
        },
        py::arg("records"), py::arg("lexicon"),
        py::arg("segmentation") = "whitespace",
        py::arg("granularity") = "utterance",
        py::arg("sentences") = std::vector<ActAnnotation>{},
        py::arg("threads") = 1);
  m.def("act_importance",
        [](const std::vector<AttributionRecord>& records,
           const std::vector<ActAnnotation>& acts, const std::string& language,
           const std::vector<std::string>& order, std::size_t threads) {
          return ComputeActImportance(records, acts, language, order, threads);
        },
        py::arg("records"), py::arg("acts"), py::arg("language"),
        py::arg("order") = std::vector<std::string>{}, py::arg("threads") = 1);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::Run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the stylex command line; returns (code, stdout, stderr).");
}
