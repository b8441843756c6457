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

// The stylex command line: `stylex expand|coverage|aggregate --config FILE`.

#ifndef STYLEX_CLI_HPP_
#define STYLEX_CLI_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stylex/aggregation.hpp"
#include "stylex/lexicon.hpp"
#include "stylex/mlc.hpp"

namespace stylex::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kMissingInput = 2,
  kMalformedInput = 3,
  kContractViolation = 4,
};

struct ExpandJob {
  std::string language;
  std::filesystem::path embeddings;
  std::filesystem::path seed_lexicon;
  std::filesystem::path scored_corpus;
};

struct CoverageJob {
  std::vector<std::filesystem::path> lexica;
  std::vector<std::filesystem::path> corpora;
};

struct LanguageInputs {
  std::string language;
  std::filesystem::path attributions;
  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> acts;
};

struct AggregateJob {
  std::vector<LanguageInputs> languages;
  std::vector<std::string> acts;  // optional fixed act row order
};

// One JSON file describing a run. Relative paths are resolved against the
// directory of the config file; `display` keeps them as written so reports do
// not depend on where the tree is checked out.
struct PipelineConfig {
  std::filesystem::path base_dir;
  std::filesystem::path output_dir;
  std::size_t threads = 0;
  std::map<std::string, Segmentation> segmentation;
  Granularity granularity = Granularity::kUtterance;
  MlcConfig mlc;
  std::optional<ExpandJob> expand;
  std::optional<CoverageJob> coverage;
  std::optional<AggregateJob> aggregate;
  // Canonical JSON of everything that affects results; hashed into reports.
  std::string canonical;

  // Explicit entry, else substring for zh/ja and whitespace otherwise.
  Segmentation SegmentationFor(const std::string& language) const;
  std::string Display(const std::filesystem::path& resolved) const;
};

PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

// Runs one command line (without the program name). Diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace stylex::cli

#endif  // STYLEX_CLI_HPP_
