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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "qnode/sequence/event_log.hpp"

namespace qnode::io {

// One JSON object per line. The first line is the header; every following
// line is a click, shot or summary record selected by its "kind" field.
std::string header_to_line(const sequence::LogHeader& header);
std::string record_to_line(const sequence::Record& record);

// Throw LogFormatError naming line_number on malformed input.
sequence::LogHeader header_from_line(std::string_view line, long long line_number = 1);
sequence::Record record_from_line(std::string_view line, long long line_number);

void write_log(std::ostream& out, const sequence::EventLog& log);
void write_log_file(const std::filesystem::path& path, const sequence::EventLog& log);

// Single-pass reader: holds one record at a time.
class LogReader {
 public:
  // Reads and checks the header (including its config hash).
  explicit LogReader(std::istream& in);

  const sequence::LogHeader& header() const { return header_; }
  // False at end of input.
  bool next(sequence::Record& record);
  long long line() const { return line_; }

 private:
  std::istream& in_;
  sequence::LogHeader header_;
  std::string buffer_;
  long long line_ = 0;
};

sequence::EventLog read_log(std::istream& in);
sequence::EventLog read_log_file(const std::filesystem::path& path);

}  // namespace qnode::io
