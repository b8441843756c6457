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

#include "json_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

#include "stylex/error.hpp"

namespace stylex::internal {

namespace {

std::size_t LineOfByte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

Json ParseJson(std::string_view text, std::string_view what,
               std::size_t base_line) {
  std::vector<std::set<std::string>> keys;
  std::string duplicate;
  const Json::parser_callback_t callback =
      [&](int /*depth*/, Json::parse_event_t event, Json& parsed) {
        switch (event) {
          case Json::parse_event_t::object_start:
            keys.emplace_back();
            break;
          case Json::parse_event_t::object_end:
            keys.pop_back();
            break;
          case Json::parse_event_t::key:
            if (!keys.back().insert(parsed.get<std::string>()).second &&
                duplicate.empty()) {
              duplicate = parsed.get<std::string>();
            }
            break;
          default:
            break;
        }
        return true;
      };
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end(), callback);
  } catch (const Json::parse_error& e) {
    const std::size_t line =
        base_line == 0 ? LineOfByte(text, e.byte == 0 ? 0 : e.byte - 1)
                       : base_line;
    throw FormatError(std::string(what) + ": invalid JSON (" + e.what() + ")",
                      line);
  }
  if (!duplicate.empty()) {
    throw FormatError(std::string(what) + ": duplicate key \"" + duplicate +
                          "\"",
                      base_line);
  }
  return doc;
}

std::string ReadFile(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + std::string(what) + ": " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read error: " + path.string());
  return buffer.str();
}

void ForEachLine(std::istream& in,
                 const std::function<void(std::string_view, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, line_no);
  }
  if (in.bad()) throw IoError("read error");
}

const Json& Require(const Json& object, const char* key, std::string_view what,
                    std::size_t line) {
  if (!object.is_object()) {
    throw FormatError(std::string(what) + ": expected a JSON object", line);
  }
  const auto it = object.find(key);
  if (it == object.end()) {
    throw FormatError(
        std::string(what) + ": missing field \"" + key + "\"", line);
  }
  return *it;
}

std::string RequireString(const Json& object, const char* key,
                          std::string_view what, std::size_t line) {
  const Json& value = Require(object, key, what, line);
  if (!value.is_string()) {
    throw FormatError(
        std::string(what) + ": field \"" + key + "\" must be a string", line);
  }
  return value.get<std::string>();
}

double RequireNumber(const Json& object, const char* key, std::string_view what,
                     std::size_t line) {
  const Json& value = Require(object, key, what, line);
  if (!value.is_number()) {
    throw FormatError(
        std::string(what) + ": field \"" + key + "\" must be a number", line);
  }
  const double number = value.get<double>();
  if (!std::isfinite(number)) {
    throw FormatError(
        std::string(what) + ": field \"" + key + "\" must be finite", line);
  }
  return number;
}

long long RequireInt(const Json& object, const char* key, std::string_view what,
                     std::size_t line) {
  const Json& value = Require(object, key, what, line);
  if (!value.is_number_integer()) {
    throw FormatError(
        std::string(what) + ": field \"" + key + "\" must be an integer", line);
  }
  return value.get<long long>();
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

}  // namespace stylex::internal
