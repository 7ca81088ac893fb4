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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qnode/cli/cli.hpp"
#include "qnode/io/config_file.hpp"

namespace qnode::cli {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

// Set by the parsed subcommand's callback, run after parsing.
using Action = std::function<int(Streams&)>;

using Summary = nlohmann::ordered_json;
using Rows = std::vector<std::pair<std::string, std::string>>;

// --config, else QNODE_CONFIG, else defaults; then --seed and --threads.
io::ConfigFile effective_config(const Common& common);

void print_rows(std::ostream& out, const Rows& rows);
void print_summary(std::ostream& out, const Summary& summary);
std::string fmt(double v, int precision);

void add_simulate(CLI::App& app, const Common& common, Action& action);
void add_analyze(CLI::App& app, const Common& common, Action& action);
void add_fit(CLI::App& app, Action& action);

}  // namespace qnode::cli
