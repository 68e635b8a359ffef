// Copyright 2026 The qcross Authors
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

#include <stdexcept>
#include <string>

namespace qcross {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  CutoffTooSmall,
  StabilityViolation,
  NegativeEigenvalue,
  GridTooCoarse,
  TailTooLarge,
  DegenerateCoupling,
  SeriesTooShort,
  ParseError,
  ValidationError,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library. `subject` names the offending
// config key (validation) or is empty; `line` is 1-based for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string subject = {},
        int line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix that what() carries.
  const std::string& message() const noexcept { return message_; }
  const std::string& subject() const noexcept { return subject_; }
  int line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string subject_;
  int line_;
};

}  // namespace qcross
