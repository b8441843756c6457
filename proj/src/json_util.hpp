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

// Internal JSON helpers shared by the loaders.

#ifndef STYLEX_SRC_JSON_UTIL_HPP_
#define STYLEX_SRC_JSON_UTIL_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

namespace stylex::internal {

using Json = nlohmann::ordered_json;

// Parses one JSON document, rejecting duplicate object keys. Errors are
// FormatError; `base_line` is added to the reported line so that JSON-lines
// callers can pass the line number of the record.
Json ParseJson(std::string_view text, std::string_view what,
               std::size_t base_line = 0);

std::string ReadFile(const std::filesystem::path& path, std::string_view what);

// Calls fn(line_text, line_no) for every non-blank line.
void ForEachLine(std::istream& in,
                 const std::function<void(std::string_view, std::size_t)>& fn);

// Typed field access with schema diagnostics.
const Json& Require(const Json& object, const char* key, std::string_view what,
                    std::size_t line);
std::string RequireString(const Json& object, const char* key,
                          std::string_view what, std::size_t line);
double RequireNumber(const Json& object, const char* key, std::string_view what,
                     std::size_t line);
long long RequireInt(const Json& object, const char* key, std::string_view what,
                     std::size_t line);

// Shortest round-trip decimal for a double.
std::string FormatDouble(double value);

}  // namespace stylex::internal

#endif  // STYLEX_SRC_JSON_UTIL_HPP_
