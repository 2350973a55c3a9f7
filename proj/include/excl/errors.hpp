// Copyright 2026 The excl Authors
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

namespace excl {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class ProbSum : public Error {
 public:
  using Error::Error;
};

class NotDensity : public Error {
 public:
  using Error::Error;
};

class BadSubsetSize : public Error {
 public:
  using Error::Error;
};

class TooFewStates : public Error {
 public:
  using Error::Error;
};

class EmptyEnsemble : public Error {
 public:
  using Error::Error;
};

class CountMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateK : public Error {
 public:
  using Error::Error;
};

class BadEps : public Error {
 public:
  using Error::Error;
};

class ScaleCap : public Error {
 public:
  using Error::Error;
};

/// Raised by the file-format layer; carries enough context to point the
/// user at the offending file, line and field.
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, std::string field, const std::string& what)
      : Error(file + (line > 0 ? ":" + std::to_string(line) : "") +
              (field.empty() ? "" : " (field '" + field + "')") + ": " + what),
        file_(std::move(file)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  int line_;
  std::string field_;
};

}  // namespace excl
