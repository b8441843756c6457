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

#include "stylex/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json_util.hpp"
#include "stylex/attribution.hpp"
#include "stylex/corpus.hpp"
#include "stylex/embeddings.hpp"
#include "stylex/error.hpp"
#include "stylex/io.hpp"

namespace stylex::cli {

namespace {

using internal::Json;

constexpr std::string_view kConfig = "pipeline config";

std::filesystem::path Resolve(const PipelineConfig& config,
                              const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : (config.base_dir / p).lexically_normal();
}

std::filesystem::path RequirePath(const PipelineConfig& config, const Json& obj,
                                  const char* key) {
  return Resolve(config, internal::RequireString(obj, key, kConfig, 0));
}

void RequireExists(const std::filesystem::path& path, const char* what) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError(std::string("missing ") + what + ": " + path.string());
  }
}

void CheckKeys(const Json& obj, std::initializer_list<std::string_view> keys,
               std::string_view section) {
  if (!obj.is_object()) {
    throw FormatError(std::string(kConfig) + ": \"" + std::string(section) +
                      "\" must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw FormatError(std::string(kConfig) + ": unknown field \"" + key +
                        "\" in " + std::string(section));
    }
  }
}

std::vector<std::string> StringList(const Json& obj, const char* key) {
  const Json& list = internal::Require(obj, key, kConfig, 0);
  if (!list.is_array()) {
    throw FormatError(std::string(kConfig) + ": \"" + key +
                      "\" must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : list) {
    if (!item.is_string()) {
      throw FormatError(std::string(kConfig) + ": \"" + key +
                        "\" must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string Canonical(const PipelineConfig& config) {
  Json doc = Json::object();
  Json segmentation = Json::object();
  for (const auto& [language, mode] : config.segmentation) {
    segmentation[language] = ToString(mode);
  }
  doc["segmentation"] = std::move(segmentation);
  doc["granularity"] = ToString(config.granularity);
  doc["mlc"] = Json::parse(SaveMlcConfig(config.mlc));
  if (config.expand) {
    doc["expand"] = {
        {"language", config.expand->language},
        {"embeddings", config.Display(config.expand->embeddings)},
        {"seed_lexicon", config.Display(config.expand->seed_lexicon)},
        {"scored_corpus", config.Display(config.expand->scored_corpus)}};
  }
  if (config.coverage) {
    Json lexica = Json::array();
    for (const auto& p : config.coverage->lexica) lexica.push_back(config.Display(p));
    Json corpora = Json::array();
    for (const auto& p : config.coverage->corpora) corpora.push_back(config.Display(p));
    doc["coverage"] = {{"lexica", lexica}, {"corpora", corpora}};
  }
  if (config.aggregate) {
    Json languages = Json::array();
    for (const auto& l : config.aggregate->languages) {
      Json entry = {{"language", l.language},
                    {"attributions", config.Display(l.attributions)},
                    {"lexicon", config.Display(l.lexicon)}};
      if (l.acts) entry["acts"] = config.Display(*l.acts);
      languages.push_back(std::move(entry));
    }
    doc["aggregate"] = {{"languages", languages}, {"acts", config.aggregate->acts}};
  }
  return doc.dump();
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

struct Overrides {
  std::string config;
  std::string out;
  std::string lang;
  std::optional<std::size_t> threads;
};

PipelineConfig Prepare(const Overrides& o) {
  PipelineConfig config = LoadPipelineConfig(o.config);
  if (!o.out.empty()) config.output_dir = o.out;
  if (o.threads) config.threads = *o.threads;
  return config;
}

void EnsureOutputDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

void WriteAll(const std::filesystem::path& dir,
              const std::vector<std::pair<std::string, std::string>>& files,
              std::ostream& out) {
  EnsureOutputDir(dir);
  for (const auto& [name, content] : files) {
    WriteFileAtomic(dir / name, content);
    out << "wrote " << (dir / name).string() << '\n';
  }
}

int CmdExpand(const Overrides& o, std::ostream& out, std::ostream& err) {
  PipelineConfig config = Prepare(o);
  if (!config.expand) {
    throw FormatError(std::string(kConfig) + ": no \"expand\" section");
  }
  ExpandJob& job = *config.expand;
  if (!o.lang.empty()) job.language = o.lang;
  config.canonical = Canonical(config);
  RequireExists(job.embeddings, "embeddings");
  RequireExists(job.seed_lexicon, "seed lexicon");
  RequireExists(job.scored_corpus, "scored corpus");

  EmbeddingTable table = EmbeddingTable::LoadFile(job.embeddings);
  table.set_language(job.language);
  if (table.duplicates() > 0) {
    err << "warning: " << table.duplicates()
        << " duplicate vocabulary rows ignored in "
        << job.embeddings.string() << '\n';
  }
  const Lexicon seed = LoadLexiconFile(job.seed_lexicon);
  const auto corpus = LoadScoredCorpusFile(job.scored_corpus);
  if (corpus.empty()) {
    throw FormatError("scored corpus is empty: " + job.scored_corpus.string());
  }
  const MlcResult result =
      RunMlc(seed, table, corpus, config.SegmentationFor(job.language),
             config.mlc, config.threads);
  WriteAll(config.output_dir,
           {{"lexicon." + job.language + ".json", SaveLexicon(result.lexicon)},
            {"purification." + job.language + ".jsonl",
             result.report.ToJsonLines()}},
           out);
  return kOk;
}

int CmdCoverage(const Overrides& o, std::ostream& out) {
  PipelineConfig config = Prepare(o);
  if (!config.coverage) {
    throw FormatError(std::string(kConfig) + ": no \"coverage\" section");
  }
  for (const auto& p : config.coverage->lexica) RequireExists(p, "lexicon");
  for (const auto& p : config.coverage->corpora) RequireExists(p, "corpus");

  std::vector<std::pair<std::filesystem::path, Lexicon>> lexica;
  for (const auto& p : config.coverage->lexica) {
    Lexicon lexicon = LoadLexiconFile(p);
    if (!o.lang.empty() && lexicon.language != o.lang) continue;
    lexica.emplace_back(p, std::move(lexicon));
  }
  std::vector<std::pair<std::filesystem::path, std::vector<std::string>>> corpora;
  for (const auto& p : config.coverage->corpora) {
    std::vector<std::string> texts;
    for (auto& u : LoadCorpusFile(p)) texts.push_back(std::move(u.text));
    if (texts.empty()) throw FormatError("corpus is empty: " + p.string());
    corpora.emplace_back(p, std::move(texts));
  }

  Json rows = Json::array();
  for (const auto& [lexicon_path, lexicon] : lexica) {
    for (const auto& [corpus_path, texts] : corpora) {
      const CoverageStat stat =
          Coverage(lexicon, texts, config.SegmentationFor(lexicon.language),
                   config.threads);
      rows.push_back({{"lexicon", config.Display(lexicon_path)},
                      {"language", lexicon.language},
                      {"corpus", config.Display(corpus_path)},
                      {"covered", stat.covered},
                      {"total", stat.total},
                      {"percent", stat.percent}});
    }
  }
  Json doc = {{"config_hash", Sha256Hex(Canonical(config))}, {"rows", rows}};
  WriteAll(config.output_dir, {{"coverage.json", doc.dump(2) + "\n"}}, out);
  return kOk;
}

int CmdAggregate(const Overrides& o, std::ostream& out) {
  PipelineConfig config = Prepare(o);
  if (!config.aggregate) {
    throw FormatError(std::string(kConfig) + ": no \"aggregate\" section");
  }
  auto& languages = config.aggregate->languages;
  if (!o.lang.empty()) {
    const auto keep = SplitCommas(o.lang);
    std::erase_if(languages, [&](const LanguageInputs& l) {
      return std::find(keep.begin(), keep.end(), l.language) == keep.end();
    });
  }
  config.canonical = Canonical(config);
  for (const auto& l : languages) {
    RequireExists(l.attributions, "attribution records");
    RequireExists(l.lexicon, "lexicon");
    if (l.acts) RequireExists(*l.acts, "acts file");
  }

  const bool with_acts = !languages.empty() && languages.front().acts;
  std::vector<LanguageImportances> categories;
  std::vector<LanguageImportances> acts;
  ComparisonMetadata metadata;
  metadata.granularity = config.granularity;
  metadata.config_hash = Sha256Hex(config.canonical);
  for (const auto& l : languages) {
    const auto records = LoadRecordsFile(l.attributions);
    const Lexicon lexicon = LoadLexiconFile(l.lexicon);
    if (lexicon.language != l.language) {
      throw ContractError("lexicon " + l.lexicon.string() + " is for \"" +
                          lexicon.language + "\", configured as \"" +
                          l.language + "\"");
    }
    std::vector<ActAnnotation> annotations;
    if (l.acts) annotations = LoadActsFile(*l.acts);
    metadata.datasets.push_back(l.language + ":" + config.Display(l.attributions));

    CategoryAggregationOptions options;
    options.segmentation = config.SegmentationFor(l.language);
    options.granularity = config.granularity;
    options.sentences = annotations;
    options.threads = config.threads;
    categories.push_back(
        {l.language, ComputeCategoryImportance(records, lexicon, options)});
    if (with_acts) {
      acts.push_back({l.language,
                      ComputeActImportance(records, annotations, l.language,
                                           config.aggregate->acts,
                                           config.threads)});
    }
  }

  std::vector<std::pair<std::string, std::string>> files;
  metadata.kind = "category";
  const ComparisonReport category_report = Compare(categories, {}, metadata);
  files.emplace_back("categories.csv", category_report.ToCsv());
  files.emplace_back("categories.json", category_report.ToJson());
  if (with_acts) {
    metadata.kind = "act";
    metadata.granularity = Granularity::kSentence;
    const ComparisonReport act_report =
        Compare(acts, config.aggregate->acts, metadata);
    files.emplace_back("acts.csv", act_report.ToCsv());
    files.emplace_back("acts.json", act_report.ToJson());
  }
  WriteAll(config.output_dir, files, out);
  return kOk;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kMissingInput;
    case ErrorKind::kFormat: return kMalformedInput;
    case ErrorKind::kContract: return kContractViolation;
  }
  return kContractViolation;
}

}  // namespace

Segmentation PipelineConfig::SegmentationFor(const std::string& language) const {
  const auto it = segmentation.find(language);
  if (it != segmentation.end()) return it->second;
  if (language == "zh" || language == "ja") return Segmentation::kSubstring;
  return Segmentation::kWhitespace;
}

std::string PipelineConfig::Display(const std::filesystem::path& resolved) const {
  const auto relative = resolved.lexically_relative(base_dir);
  if (relative.empty() || *relative.begin() == "..") {
    return resolved.generic_string();
  }
  return relative.generic_string();
}

PipelineConfig LoadPipelineConfig(const std::filesystem::path& path) {
  RequireExists(path, "config file");
  const Json doc = internal::ParseJson(internal::ReadFile(path, "config"),
                                       kConfig);
  CheckKeys(doc,
            {"output_dir", "threads", "segmentation", "granularity", "mlc",
             "expand", "coverage", "aggregate"},
            "config");
  PipelineConfig config;
  config.base_dir = path.parent_path().empty()
                        ? std::filesystem::path(".")
                        : path.parent_path();
  config.base_dir = config.base_dir.lexically_normal();
  config.output_dir = doc.contains("output_dir")
                          ? RequirePath(config, doc, "output_dir")
                          : config.base_dir / "out";
  if (doc.contains("threads")) {
    const long long threads = internal::RequireInt(doc, "threads", kConfig, 0);
    if (threads < 0) throw FormatError("pipeline config: threads must be >= 0");
    config.threads = static_cast<std::size_t>(threads);
  }
  if (doc.contains("segmentation")) {
    const Json& seg = doc["segmentation"];
    if (!seg.is_object()) {
      throw FormatError("pipeline config: \"segmentation\" must be an object");
    }
    for (const auto& [language, mode] : seg.items()) {
      if (!mode.is_string()) {
        throw FormatError("pipeline config: segmentation values are strings");
      }
      config.segmentation[language] = ParseSegmentation(mode.get<std::string>());
    }
  }
  if (doc.contains("granularity")) {
    config.granularity = ParseGranularity(
        internal::RequireString(doc, "granularity", kConfig, 0));
  }
  if (doc.contains("mlc")) config.mlc = LoadMlcConfig(doc["mlc"].dump());

  if (doc.contains("expand")) {
    const Json& e = doc["expand"];
    CheckKeys(e, {"language", "embeddings", "seed_lexicon", "scored_corpus"},
              "expand");
    config.expand = ExpandJob{
        internal::RequireString(e, "language", kConfig, 0),
        RequirePath(config, e, "embeddings"),
        RequirePath(config, e, "seed_lexicon"),
        RequirePath(config, e, "scored_corpus")};
  }
  if (doc.contains("coverage")) {
    const Json& c = doc["coverage"];
    CheckKeys(c, {"lexica", "corpora"}, "coverage");
    CoverageJob job;
    for (const auto& p : StringList(c, "lexica")) job.lexica.push_back(Resolve(config, p));
    for (const auto& p : StringList(c, "corpora")) job.corpora.push_back(Resolve(config, p));
    config.coverage = std::move(job);
  }
  if (doc.contains("aggregate")) {
    const Json& a = doc["aggregate"];
    CheckKeys(a, {"languages", "acts"}, "aggregate");
    AggregateJob job;
    const Json& languages = internal::Require(a, "languages", kConfig, 0);
    if (!languages.is_array()) {
      throw FormatError("pipeline config: aggregate.languages must be an array");
    }
    for (const auto& l : languages) {
      CheckKeys(l, {"language", "attributions", "lexicon", "acts"},
                "aggregate.languages");
      LanguageInputs inputs;
      inputs.language = internal::RequireString(l, "language", kConfig, 0);
      inputs.attributions = RequirePath(config, l, "attributions");
      inputs.lexicon = RequirePath(config, l, "lexicon");
      if (l.contains("acts")) inputs.acts = RequirePath(config, l, "acts");
      job.languages.push_back(std::move(inputs));
    }
    const auto with_acts = std::count_if(
        job.languages.begin(), job.languages.end(),
        [](const LanguageInputs& l) { return l.acts.has_value(); });
    if (with_acts != 0 &&
        with_acts != static_cast<std::ptrdiff_t>(job.languages.size())) {
      throw FormatError(
          "pipeline config: give an acts file for every language or none");
    }
    if (config.granularity == Granularity::kSentence && with_acts == 0) {
      throw FormatError(
          "pipeline config: sentence granularity needs acts files");
    }
    if (a.contains("acts")) job.acts = StringList(a, "acts");
    config.aggregate = std::move(job);
  }
  config.canonical = Canonical(config);
  return config;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"stylex: multilingual style lexica and attribution aggregation",
               "stylex"};
  app.require_subcommand(1);
  Overrides o;
  std::size_t threads = 0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Pipeline config JSON")
        ->required();
    cmd->add_option("--out", o.out, "Output directory (overrides config)");
    cmd->add_option("--lang", o.lang,
                    "Target language (expand), lexicon language filter "
                    "(coverage), or comma-separated languages (aggregate)");
    cmd->add_option("--threads", threads, "Worker threads, 0 = auto");
  };
  CLI::App* expand =
      app.add_subcommand("expand", "Expand and purify a seed lexicon");
  CLI::App* coverage =
      app.add_subcommand("coverage", "Lexicon coverage of utterance corpora");
  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "Category and dialogue-act importance reports");
  add_common(expand);
  add_common(coverage);
  add_common(aggregate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (CLI::App* cmd : {expand, coverage, aggregate}) {
    if (cmd->count("--threads") > 0) o.threads = threads;
  }

  try {
    if (expand->parsed()) return CmdExpand(o, out, err);
    if (coverage->parsed()) return CmdCoverage(o, out);
    return CmdAggregate(o, out);
  } catch (const Error& e) {
    err << "stylex: error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "stylex: internal error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace stylex::cli
