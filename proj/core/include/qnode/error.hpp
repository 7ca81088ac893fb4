// Copyright 2026 The qnode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qnode {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller-supplied value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Configuration text could not be parsed; line/column are 1-based.
class ConfigError : public Error {
 public:
  ConfigError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// A line of a structured input (log, table) could not be read; line is 1-based.
class FormatError : public Error {
 public:
  FormatError(const std::string& source, long long line, const std::string& message)
      : Error(source + " line " + std::to_string(line) + ": " + message), line_(line) {}
  long long line() const noexcept { return line_; }

 private:
  long long line_;
};

class LogFormatError : public FormatError {
 public:
  LogFormatError(long long line, const std::string& message) : FormatError("log", line, message) {}
};

class TableFormatError : public FormatError {
 public:
  TableFormatError(long long line, const std::string& message) : FormatError("table", line, message) {}
};

// An estimator cannot produce a defined value from its input (e.g. zero singles).
class EstimatorError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnode
