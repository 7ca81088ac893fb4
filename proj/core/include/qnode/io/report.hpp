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

#include <string>
#include <vector>

#include "qnode/io/config_file.hpp"

namespace qnode::io {

struct ReportEntry {
  std::string key;
  std::string value;
  std::string note;  // expected value and tolerance, when there is one
  bool numeric = false;
};

// Ordered key-value document.
struct Report {
  std::vector<ReportEntry> entries;

  void add(const std::string& key, double value, int precision, const std::string& note = {});
  void add_count(const std::string& key, long long value, const std::string& note = {});
  void add_text(const std::string& key, const std::string& value, const std::string& note = {});
  const ReportEntry* find(const std::string& key) const;

  // "key = value  # note" lines under a versioned comment header.
  std::string to_text() const;
  // Single-line JSON object of all keys.
  std::string to_json_line() const;
};

// Entanglement in both bases, g2 and readout at the configured statistics,
// plus the error budget.
Report run_standard_battery(const ConfigFile& config);

}  // namespace qnode::io
