//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_ERROR_H_
#define BCFUSE_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace bcfuse {

// Base of every error raised by the library. The code is a stable,
// machine-readable identifier (e.g. "PARSE_ERROR", "ISA_CYCLE").
class Error: public std::runtime_error {
public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) { }

  const std::string &code() const noexcept { return code_; }

private:
  std::string code_;
};

class ParseError: public Error {
public:
  ParseError(int line, int column, std::string expected, std::string message,
             std::string source = {})
      : Error("PARSE_ERROR", (source.empty() ? "" : source + ":") + "line "
                                 + std::to_string(line) + ", column "
                                 + std::to_string(column) + ": " + message),
        line_(line), column_(column), expected_(std::move(expected)),
        message_(std::move(message)), source_(std::move(source)) { }

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string &expected() const noexcept { return expected_; }
  // Input name (file path or upload field), empty when unknown.
  const std::string &source() const noexcept { return source_; }

  ParseError with_source(std::string source) const {
    return ParseError(line_, column_, expected_, message_, std::move(source));
  }

private:
  int line_;
  int column_;
  std::string expected_;
  std::string message_;
  std::string source_;
};

class ValidationError: public Error {
public:
  using Error::Error;
};

// Precondition on mutable state violated (deciding twice, finalizing with
// pending conflicts, ...).
class StateError: public Error {
public:
  using Error::Error;
};

class NotFoundError: public Error {
public:
  using Error::Error;
};

}  // namespace bcfuse

#endif  // BCFUSE_ERROR_H_
