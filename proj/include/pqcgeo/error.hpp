// Copyright 2026 The pqcgeo Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

/// @file error.hpp
/// Exception hierarchy. Every error carries a stable exit code so the CLI
/// can map failures without inspecting messages:
///   2 I/O, 3 validation, 4 numerical.

namespace pqcgeo {

class Error : public std::runtime_error {
  public:
    Error(const std::string &what, int exit_code)
        : std::runtime_error(what), exit_code_(exit_code) {}

    [[nodiscard]] int exitCode() const noexcept { return exit_code_; }

  private:
    int exit_code_;
};

class IoError : public Error {
  public:
    explicit IoError(const std::string &what) : Error(what, 2) {}
};

class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &what) : Error(what, 3) {}
};

/// Syntax error in a text input, with 1-based line and column.
class ParseError : public ValidationError {
  public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : ValidationError("line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Eigensolver non-convergence or a failed internal verification.
class NumericalError : public Error {
  public:
    explicit NumericalError(const std::string &what) : Error(what, 4) {}
};

} // namespace pqcgeo
