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

#include "stylex/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "stylex/error.hpp"

namespace stylex::unicode {

namespace {

const icu::Normalizer2& NfcInstance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw std::runtime_error(std::string("ICU NFC normalizer unavailable: ") +
                             u_errorName(status));
  }
  return *instance;
}

icu::UnicodeString ToIcu(std::u32string_view text) {
  return icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(text.data()),
      static_cast<int32_t>(text.size()));
}

std::u32string FromIcu(const icu::UnicodeString& text) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(text.length()));
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

}  // namespace

std::u32string Decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw FormatError("ill-formed UTF-8 at byte " + std::to_string(at));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string Encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::size_t CodePointLength(std::string_view utf8) {
  std::size_t n = 0;
  for (const char ch : utf8) {
    // Count every byte that is not a continuation byte.
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string Nfc(std::string_view utf8) {
  const std::u32string decoded = Decode(utf8);
  const icu::Normalizer2& nfc = NfcInstance();
  const icu::UnicodeString source = ToIcu(decoded);
  UErrorCode status = U_ZERO_ERROR;
  if (nfc.isNormalized(source, status) && U_SUCCESS(status)) {
    return std::string(utf8);
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc.normalize(source, status);
  if (U_FAILURE(status)) {
    throw FormatError(std::string("NFC normalization failed: ") +
                      u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool IsNfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const bool result =
      NfcInstance().isNormalized(ToIcu(Decode(utf8)), status);
  return U_SUCCESS(status) && result;
}

char32_t FoldCase(char32_t c) {
  return static_cast<char32_t>(
      u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
}

std::u32string FoldCase(std::u32string_view text) {
  std::u32string out(text);
  for (char32_t& c : out) c = FoldCase(c);
  return out;
}

CharClass Classify(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  if (u_isUWhiteSpace(cp) || u_charType(cp) == U_CONTROL_CHAR) {
    return CharClass::kSpace;
  }
  switch (u_charType(cp)) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return CharClass::kSymbol;
    default:
      return CharClass::kWord;
  }
}

NormalizedText NormalizeWithOffsets(std::u32string_view original) {
  const icu::Normalizer2& nfc = NfcInstance();
  NormalizedText result;
  UErrorCode status = U_ZERO_ERROR;
  if (nfc.isNormalized(ToIcu(original), status) && U_SUCCESS(status)) {
    result.text.assign(original);
    return result;
  }

  // Normalize one segment at a time; a segment starts at every code point
  // with a normalization boundary before it.
  result.identity = false;
  std::size_t begin = 0;
  while (begin < original.size()) {
    std::size_t end = begin + 1;
    while (end < original.size() &&
           !nfc.hasBoundaryBefore(static_cast<UChar32>(original[end]))) {
      ++end;
    }
    status = U_ZERO_ERROR;
    const icu::UnicodeString segment =
        nfc.normalize(ToIcu(original.substr(begin, end - begin)), status);
    if (U_FAILURE(status)) {
      throw FormatError(std::string("NFC normalization failed: ") +
                        u_errorName(status));
    }
    for (const char32_t c : FromIcu(segment)) {
      result.text.push_back(c);
      result.orig_begin.push_back(begin);
      result.orig_end.push_back(end);
    }
    begin = end;
  }
  return result;
}

}  // namespace stylex::unicode
