// Copyright 2026 The DMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmc {

/// Error categories. Everything except kInternal is an input problem and maps
/// to CLI exit code 2.
enum class ErrorCode {
  kParse,
  kRange,
  kFormat,
  kValidation,
  kIo,
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return code_ == ErrorCode::kInternal ? 3 : 2; }

 private:
  ErrorCode code_;
};

/// Parse failure. `field` names the offending component ("minutes",
/// "seconds", "centiseconds", "separator", ...); `line` is 1-based, 0 when
/// not applicable.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message,
             std::size_t line = 0)
      : Error(ErrorCode::kParse, Compose(field, message, line)),
        field_(std::move(field)),
        detail_(message),
        line_(line) {}

  const std::string& field() const { return field_; }
  /// Message without the line/field prefix.
  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Compose(const std::string& field,
                             const std::string& message, std::size_t line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::string detail_;
  std::size_t line_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& message)
      : Error(ErrorCode::kRange, message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorCode::kValidation, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorCode::kIo, message) {}
};

/// Malformed motion binary.
class MotionFormatError : public Error {
 public:
  enum class Kind { kBadMagic, kTruncated, kNonFinite, kSizeMismatch };

  MotionFormatError(Kind kind, const std::string& message)
      : Error(ErrorCode::kFormat, message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace dmc
