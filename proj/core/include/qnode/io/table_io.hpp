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
#include <string>
#include <vector>

namespace qnode::io {

// Delimiter-separated numeric table. Column names come from a comment line
// "# columns: a b c"; other lines starting with '#' are kept as comments.
// Fields may be separated by tabs, commas or spaces.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;

  bool has(const std::string& name) const;
  // Throws InvalidArgument for unknown names.
  std::vector<double> column(const std::string& name) const;
  void add_row(std::vector<double> row);
  bool operator==(const Table&) const = default;
};

Table read_table(std::istream& in);
Table read_table_file(const std::filesystem::path& path);
void write_table(std::ostream& out, const Table& table);
void write_table_file(const std::filesystem::path& path, const Table& table);

}  // namespace qnode::io
