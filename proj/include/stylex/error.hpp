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

#ifndef STYLEX_ERROR_HPP_
#define STYLEX_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stylex {

// Error taxonomy shared by the library and the CLI. Each kind maps to one
// process exit code (see cli.hpp).
enum class ErrorKind {
  kIo,        // missing or unreadable input, unwritable output
  kFormat,    // malformed input document or stream
  kContract,  // inputs well-formed but violate an operation's precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

// Malformed input. `line` is 1-based; 0 means the error is not tied to a line.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message, std::size_t line = 0)
      : Error(ErrorKind::kFormat,
              line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message)
      : Error(ErrorKind::kContract, message) {}
};

}  // namespace stylex

#endif  // STYLEX_ERROR_HPP_
