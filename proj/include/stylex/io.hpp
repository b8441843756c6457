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

#ifndef STYLEX_IO_HPP_
#define STYLEX_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace stylex {

// Writes `content` to a temporary file next to `path` and renames it into
// place, so readers never observe a partial file. Throws IoError.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

// Lowercase hex SHA-256 of the bytes.
std::string Sha256Hex(std::string_view bytes);

}  // namespace stylex

#endif  // STYLEX_IO_HPP_
