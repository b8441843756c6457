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

#include "stylex/lexicon.hpp"

#include <cstdint>
#include <limits>
#include <set>
#include <unordered_map>
#include <utility>

#include "json_util.hpp"
#include "stylex/error.hpp"
#include "stylex/parallel.hpp"
#include "stylex/unicode.hpp"

namespace stylex {

namespace {

using internal::Json;

constexpr std::uint32_t kUnknownToken = std::numeric_limits<std::uint32_t>::max();

// Matching unit: a token id (whitespace mode) or a code point (substring
// mode), with its code point range in the normalized text.
struct Unit {
  std::uint32_t id;
  std::size_t begin;
  std::size_t end;
};

class Trie {
 public:
  Trie() : nodes_(1) {}

  // The first term inserted for a unit sequence owns it.
  void Insert(const std::vector<std::uint32_t>& units, std::int32_t term) {
    std::uint32_t node = 0;
    for (const std::uint32_t unit : units) {
      const auto [it, inserted] = nodes_[node].next.try_emplace(
          unit, static_cast<std::uint32_t>(nodes_.size()));
      if (inserted) nodes_.emplace_back();
      node = it->second;
    }
    if (nodes_[node].term < 0) nodes_[node].term = term;
  }

  // Longest term starting at units[pos]: (term, length in units) or term -1.
  std::pair<std::int32_t, std::size_t> Longest(const std::vector<Unit>& units,
                                               std::size_t pos) const {
    std::pair<std::int32_t, std::size_t> best{-1, 0};
    std::uint32_t node = 0;
    for (std::size_t i = pos; i < units.size(); ++i) {
      const auto it = nodes_[node].next.find(units[i].id);
      if (it == nodes_[node].next.end()) break;
      node = it->second;
      if (nodes_[node].term >= 0) best = {nodes_[node].term, i - pos + 1};
    }
    return best;
  }

 private:
  struct Node {
    std::unordered_map<std::uint32_t, std::uint32_t> next;
    std::int32_t term = -1;
  };
  std::vector<Node> nodes_;
};

// Splits normalized text into whitespace-mode tokens (unfolded).
template <class Emit>
void Tokenize(const std::u32string& text, Emit&& emit) {
  std::size_t start = 0;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto cls = unicode::Classify(text[i]);
    if (cls == unicode::CharClass::kWord) {
      if (!in_word) {
        start = i;
        in_word = true;
      }
      continue;
    }
    if (in_word) {
      emit(start, i);
      in_word = false;
    }
    if (cls == unicode::CharClass::kSymbol) emit(i, i + 1);
  }
  if (in_word) emit(start, text.size());
}

}  // namespace

Segmentation ParseSegmentation(std::string_view name) {
  if (name == "whitespace") return Segmentation::kWhitespace;
  if (name == "substring") return Segmentation::kSubstring;
  throw FormatError("unknown segmentation \"" + std::string(name) +
                    "\" (expected whitespace or substring)");
}

std::string_view ToString(Segmentation segmentation) {
  return segmentation == Segmentation::kWhitespace ? "whitespace"
                                                   : "substring";
}

const Category* Lexicon::Find(std::string_view name) const {
  for (const auto& category : categories) {
    if (category.name == name) return &category;
  }
  return nullptr;
}

std::vector<std::string> Lexicon::CategoryNames() const {
  std::vector<std::string> names;
  names.reserve(categories.size());
  for (const auto& category : categories) names.push_back(category.name);
  return names;
}

std::size_t Lexicon::TermCount() const {
  std::size_t n = 0;
  for (const auto& category : categories) n += category.terms.size();
  return n;
}

void ValidateLexicon(const Lexicon& lexicon) {
  std::set<std::string> names;
  for (const auto& category : lexicon.categories) {
    if (category.name.empty()) throw FormatError("lexicon: empty category name");
    if (!names.insert(category.name).second) {
      throw FormatError("lexicon: duplicate category \"" + category.name + "\"");
    }
    std::set<std::string> terms;
    for (const auto& term : category.terms) {
      if (term.find_first_not_of(" \t\n\r") == std::string::npos) {
        throw FormatError("lexicon: empty term in category \"" +
                          category.name + "\"");
      }
      if (!terms.insert(unicode::Nfc(term)).second) {
        throw FormatError("lexicon: duplicate term \"" + term +
                          "\" in category \"" + category.name + "\"");
      }
    }
  }
}

Lexicon LoadLexicon(std::string_view json) {
  constexpr std::string_view kWhat = "lexicon";
  const Json doc = internal::ParseJson(json, kWhat);
  if (!doc.is_object()) throw FormatError("lexicon: expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "language" && key != "categories") {
      throw FormatError("lexicon: unexpected field \"" + key + "\"");
    }
  }
  Lexicon lexicon;
  lexicon.language = internal::RequireString(doc, "language", kWhat, 0);
  const Json& categories = internal::Require(doc, "categories", kWhat, 0);
  if (!categories.is_object()) {
    throw FormatError("lexicon: \"categories\" must be an object");
  }
  for (const auto& [name, terms] : categories.items()) {
    if (!terms.is_array()) {
      throw FormatError("lexicon: category \"" + name +
                        "\" must be an array of strings");
    }
    Category category{name, {}};
    for (const auto& term : terms) {
      if (!term.is_string()) {
        throw FormatError("lexicon: category \"" + name +
                          "\" must be an array of strings");
      }
      category.terms.push_back(term.get<std::string>());
    }
    lexicon.categories.push_back(std::move(category));
  }
  ValidateLexicon(lexicon);
  return lexicon;
}

Lexicon LoadLexiconFile(const std::filesystem::path& path) {
  try {
    return LoadLexicon(internal::ReadFile(path, "lexicon"));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string SaveLexicon(const Lexicon& lexicon) {
  Json doc = Json::object();
  doc["language"] = lexicon.language;
  Json categories = Json::object();
  for (const auto& category : lexicon.categories) {
    categories[category.name] = category.terms;
  }
  doc["categories"] = std::move(categories);
  return doc.dump(2) + "\n";
}

struct LexiconMatcher::Impl {
  Lexicon lexicon;
  Segmentation segmentation;
  std::unordered_map<std::u32string, std::uint32_t> token_ids;
  std::vector<Trie> tries;

  std::vector<Unit> Units(const std::u32string& text) const {
    std::vector<Unit> units;
    if (segmentation == Segmentation::kSubstring) {
      units.reserve(text.size());
      for (std::size_t i = 0; i < text.size(); ++i) {
        units.push_back({static_cast<std::uint32_t>(text[i]), i, i + 1});
      }
      return units;
    }
    Tokenize(text, [&](std::size_t begin, std::size_t end) {
      const auto folded = unicode::FoldCase(
          std::u32string_view(text).substr(begin, end - begin));
      const auto it = token_ids.find(folded);
      units.push_back(
          {it == token_ids.end() ? kUnknownToken : it->second, begin, end});
    });
    return units;
  }

  std::vector<std::uint32_t> TermUnits(const std::string& term) {
    const std::u32string text = unicode::Decode(unicode::Nfc(term));
    std::vector<std::uint32_t> ids;
    if (segmentation == Segmentation::kSubstring) {
      // Surrounding blanks are not part of a CJK term.
      std::size_t b = 0;
      std::size_t e = text.size();
      while (b < e && unicode::Classify(text[b]) == unicode::CharClass::kSpace) ++b;
      while (e > b && unicode::Classify(text[e - 1]) == unicode::CharClass::kSpace) --e;
      for (std::size_t i = b; i < e; ++i) {
        ids.push_back(static_cast<std::uint32_t>(text[i]));
      }
      return ids;
    }
    Tokenize(text, [&](std::size_t begin, std::size_t end) {
      auto folded = unicode::FoldCase(
          std::u32string_view(text).substr(begin, end - begin));
      const auto next = static_cast<std::uint32_t>(token_ids.size());
      ids.push_back(token_ids.try_emplace(std::move(folded), next).first->second);
    });
    return ids;
  }
};

LexiconMatcher::LexiconMatcher(const Lexicon& lexicon,
                               Segmentation segmentation)
    : impl_(std::make_unique<Impl>()) {
  impl_->lexicon = lexicon;
  impl_->segmentation = segmentation;
  impl_->tries.resize(lexicon.categories.size());
  for (std::size_t c = 0; c < lexicon.categories.size(); ++c) {
    const auto& terms = lexicon.categories[c].terms;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto units = impl_->TermUnits(terms[t]);
      if (!units.empty()) {
        impl_->tries[c].Insert(units, static_cast<std::int32_t>(t));
      }
    }
  }
}

LexiconMatcher::~LexiconMatcher() = default;
LexiconMatcher::LexiconMatcher(LexiconMatcher&&) noexcept = default;
LexiconMatcher& LexiconMatcher::operator=(LexiconMatcher&&) noexcept = default;

const Lexicon& LexiconMatcher::lexicon() const { return impl_->lexicon; }
Segmentation LexiconMatcher::segmentation() const {
  return impl_->segmentation;
}

std::vector<TermMatch> LexiconMatcher::Match(std::string_view text) const {
  const auto normalized =
      unicode::NormalizeWithOffsets(unicode::Decode(text));
  const auto units = impl_->Units(normalized.text);
  std::vector<TermMatch> matches;
  for (std::size_t c = 0; c < impl_->tries.size(); ++c) {
    const auto& category = impl_->lexicon.categories[c];
    std::size_t pos = 0;
    while (pos < units.size()) {
      const auto [term, length] = impl_->tries[c].Longest(units, pos);
      if (term < 0) {
        ++pos;
        continue;
      }
      TermMatch match;
      match.category_index = c;
      match.term_index = static_cast<std::size_t>(term);
      match.category = category.name;
      match.term = category.terms[match.term_index];
      match.char_start = normalized.OriginalBegin(units[pos].begin);
      match.char_end = normalized.OriginalEnd(units[pos + length - 1].end);
      matches.push_back(std::move(match));
      pos += length;
    }
  }
  return matches;
}

bool LexiconMatcher::Covers(std::string_view text) const {
  const auto normalized =
      unicode::NormalizeWithOffsets(unicode::Decode(text));
  const auto units = impl_->Units(normalized.text);
  for (const auto& trie : impl_->tries) {
    for (std::size_t pos = 0; pos < units.size(); ++pos) {
      if (trie.Longest(units, pos).first >= 0) return true;
    }
  }
  return false;
}

std::vector<TermMatch> Match(const Lexicon& lexicon, std::string_view text,
                             Segmentation segmentation) {
  return LexiconMatcher(lexicon, segmentation).Match(text);
}

CoverageStat Coverage(const Lexicon& lexicon,
                      std::span<const std::string> corpus,
                      Segmentation segmentation, std::size_t threads) {
  if (corpus.empty()) throw ContractError("coverage: empty corpus");
  const LexiconMatcher matcher(lexicon, segmentation);
  std::vector<std::uint8_t> covered(corpus.size(), 0);
  ParallelFor(corpus.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      covered[i] = matcher.Covers(corpus[i]) ? 1 : 0;
    }
  });
  CoverageStat stat;
  stat.total = corpus.size();
  for (const auto flag : covered) stat.covered += flag;
  stat.percent = 100.0 * static_cast<double>(stat.covered) /
                 static_cast<double>(stat.total);
  return stat;
}

}  // namespace stylex
