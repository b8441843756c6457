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

#include "stylex/corpus.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "json_util.hpp"
#include "stylex/error.hpp"
#include "stylex/unicode.hpp"

namespace stylex {

namespace {

std::ifstream Open(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + what + ": " + path.string());
  return in;
}

template <class Loader>
auto WithPath(const std::filesystem::path& path, Loader&& load) {
  try {
    return load();
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<Utterance> LoadCorpus(std::istream& in) {
  constexpr std::string_view kWhat = "corpus";
  std::vector<Utterance> corpus;
  int format = -1;  // 0 plain, 1 JSON lines
  internal::ForEachLine(in, [&](std::string_view line, std::size_t line_no) {
    if (format < 0) {
      const auto first = line.find_first_not_of(" \t");
      format = line[first] == '{' ? 1 : 0;
    }
    if (format == 0) {
      try {
        unicode::Decode(line);
      } catch (const FormatError& e) {
        throw FormatError(std::string(kWhat) + ": " + e.what(), line_no);
      }
      corpus.push_back({std::to_string(line_no), std::string(line)});
      return;
    }
    const auto doc = internal::ParseJson(line, kWhat, line_no);
    corpus.push_back({internal::RequireString(doc, "id", kWhat, line_no),
                      internal::RequireString(doc, "text", kWhat, line_no)});
  });
  return corpus;
}

std::vector<Utterance> LoadCorpusFile(const std::filesystem::path& path) {
  auto in = Open(path, "corpus");
  return WithPath(path, [&] { return LoadCorpus(in); });
}

std::vector<ScoredUtterance> LoadScoredCorpus(std::istream& in) {
  constexpr std::string_view kWhat = "scored corpus";
  std::vector<ScoredUtterance> corpus;
  internal::ForEachLine(in, [&](std::string_view line, std::size_t line_no) {
    const auto doc = internal::ParseJson(line, kWhat, line_no);
    ScoredUtterance row;
    row.id = internal::RequireString(doc, "id", kWhat, line_no);
    row.text = internal::RequireString(doc, "text", kWhat, line_no);
    row.score = internal::RequireNumber(doc, "score", kWhat, line_no);
    if (row.score < kMinStyleScore || row.score > kMaxStyleScore) {
      throw FormatError("scored corpus: score " +
                            internal::FormatDouble(row.score) +
                            " outside [-2, 2]",
                        line_no);
    }
    corpus.push_back(std::move(row));
  });
  return corpus;
}

std::vector<ScoredUtterance> LoadScoredCorpusFile(
    const std::filesystem::path& path) {
  auto in = Open(path, "scored corpus");
  return WithPath(path, [&] { return LoadScoredCorpus(in); });
}

}  // namespace stylex
