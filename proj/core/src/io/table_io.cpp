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
#include "qnode/io/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "qnode/error.hpp"

namespace qnode::io {
namespace {

constexpr std::string_view kColumnsTag = "columns:";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

bool Table::has(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("table has no column '" + name + "'");
  const auto k = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

void Table::add_row(std::vector<double> row) {
  if (!columns.empty() && row.size() != columns.size())
    throw InvalidArgument("row has " + std::to_string(row.size()) + " fields, table has " +
                          std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  long long n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view v(line);
    const auto first = v.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    v.remove_prefix(first);
    if (v.front() == '#') {
      std::string_view body = v.substr(1);
      body.remove_prefix(std::min(body.find_first_not_of(' '), body.size()));
      if (body.substr(0, kColumnsTag.size()) == kColumnsTag) {
        if (!t.columns.empty() || !t.rows.empty())
          throw TableFormatError(n, "column names must come once, before the data");
        for (auto f : split_fields(body.substr(kColumnsTag.size()))) t.columns.emplace_back(f);
        if (t.columns.empty()) throw TableFormatError(n, "empty column list");
      } else {
        while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.remove_suffix(1);
        t.comments.emplace_back(body);
      }
      continue;
    }
    std::vector<double> row;
    for (auto f : split_fields(v)) {
      double x = 0.0;
      auto r = std::from_chars(f.data(), f.data() + f.size(), x);
      if (r.ec != std::errc() || r.ptr != f.data() + f.size() || !std::isfinite(x))
        throw TableFormatError(n, "not a number: '" + std::string(f) + "'");
      row.push_back(x);
    }
    const std::size_t width = !t.columns.empty() ? t.columns.size()
                              : !t.rows.empty()  ? t.rows.front().size()
                                                 : row.size();
    if (row.size() != width)
      throw TableFormatError(n, "expected " + std::to_string(width) + " fields, found " +
                                    std::to_string(row.size()));
    t.rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("error while reading table");
  return t;
}

Table read_table_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read table " + path.string());
  return read_table(in);
}

void write_table(std::ostream& out, const Table& t) {
  for (const auto& c : t.comments) out << "# " << c << '\n';
  if (!t.columns.empty()) {
    out << "# " << kColumnsTag;
    for (const auto& c : t.columns) out << ' ' << c;
    out << '\n';
  }
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << format_double(r[i]);
    out << '\n';
  }
  if (!out) throw IoError("failed to write table");
}

void write_table_file(const std::filesystem::path& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_table(out, t);
  out.close();
  if (!out) throw IoError("failed to write " + path.string());
}

}  // namespace qnode::io
