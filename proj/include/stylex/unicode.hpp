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

// UTF-8 / code point helpers backed by ICU. All character offsets in stylex
// are 0-based code point indices, which is what Python's str slicing uses.

#ifndef STYLEX_UNICODE_HPP_
#define STYLEX_UNICODE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stylex::unicode {

// Throws FormatError on ill-formed UTF-8.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view text);

std::size_t CodePointLength(std::string_view utf8);

std::string Nfc(std::string_view utf8);
bool IsNfc(std::string_view utf8);

// Simple (1:1) default case folding, so folded text keeps its offsets.
char32_t FoldCase(char32_t c);
std::u32string FoldCase(std::u32string_view text);

enum class CharClass {
  kSpace,   // separates tokens, never part of one
  kSymbol,  // punctuation or symbol; always a token of its own
  kWord,    // letters, digits, marks
};
CharClass Classify(char32_t c);

// NFC form of a text together with a map from each normalized code point back
// to the original code point range of the normalization segment it came from.
struct NormalizedText {
  std::u32string text;
  std::vector<std::size_t> orig_begin;
  std::vector<std::size_t> orig_end;
  bool identity = true;

  std::size_t OriginalBegin(std::size_t i) const {
    return identity ? i : orig_begin[i];
  }
  // `i` is an exclusive end in normalized coordinates.
  std::size_t OriginalEnd(std::size_t i) const {
    return identity || i == 0 ? i : orig_end[i - 1];
  }
};
NormalizedText NormalizeWithOffsets(std::u32string_view original);

}  // namespace stylex::unicode

#endif  // STYLEX_UNICODE_HPP_
