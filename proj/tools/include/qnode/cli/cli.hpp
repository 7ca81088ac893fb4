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

#include <iosfwd>
#include <string>
#include <vector>

namespace qnode::cli {

// Exit codes of the qnode tool.
enum Exit : int {
  ok = 0,
  usage = 1,
  config_error = 2,
  io_error = 3,
  format_error = 4,
  estimator_failure = 5,
};

// Runs the tool on args (without the program name). Human-readable output
// goes to out; the last line written to out is a one-line JSON summary.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnode::cli
