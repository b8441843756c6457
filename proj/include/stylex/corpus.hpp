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

#ifndef STYLEX_CORPUS_HPP_
#define STYLEX_CORPUS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace stylex {

struct Utterance {
  std::string id;
  std::string text;
};

// Utterance with a style score on the annotation scale
// (Rude = -2, Neutral = 0, Polite = 2).
struct ScoredUtterance {
  std::string id;
  std::string text;
  double score = 0.0;
};

inline constexpr double kMinStyleScore = -2.0;
inline constexpr double kMaxStyleScore = 2.0;

// Reads either JSON lines {"id": str, "text": str} or plain text with one
// utterance per line (ids are then the 1-based line numbers). The format is
// chosen by the first non-blank line: JSON lines if it starts with '{'.
// Blank lines are skipped.
std::vector<Utterance> LoadCorpus(std::istream& in);
std::vector<Utterance> LoadCorpusFile(const std::filesystem::path& path);

// JSON lines {"id": str, "text": str, "score": number}; scores must be finite
// and within [-2, 2].
std::vector<ScoredUtterance> LoadScoredCorpus(std::istream& in);
std::vector<ScoredUtterance> LoadScoredCorpusFile(
    const std::filesystem::path& path);

}  // namespace stylex

#endif  // STYLEX_CORPUS_HPP_
