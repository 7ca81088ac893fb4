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
#include "qnode/cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "qnode/error.hpp"
#include "qnode/io/report.hpp"

namespace qnode::cli {

io::ConfigFile effective_config(const Common& common) {
  io::ConfigFile cfg;
  if (!common.config_path.empty())
    cfg = io::load_config(common.config_path);
  else if (auto p = io::config_path_from_env())
    cfg = io::load_config(*p);
  if (common.seed) cfg.sequence.seed = *common.seed;
  if (common.threads) {
    if (*common.threads == 0) throw InvalidArgument("--threads must be at least 1");
    cfg.sequence.threads = *common.threads;
  }
  return cfg;
}

void print_rows(std::ostream& out, const Rows& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
}

void print_summary(std::ostream& out, const Summary& summary) { out << summary.dump() << '\n'; }

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

namespace {

void add_report(CLI::App& app, const Common& common, Action& action) {
  auto* cmd = app.add_subcommand("report", "Run the standard battery and write a report");
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--out", *out_path, "Report file (text); printed when omitted");
  cmd->callback([&common, &action, out_path] {
    action = [&common, out_path](Streams& s) {
      const io::ConfigFile cfg = effective_config(common);
      const io::Report report = io::run_standard_battery(cfg);
      const std::string text = report.to_text();
      if (out_path->empty()) {
        s.out << text;
      } else {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f || !(f << text) || !(f.close(), f)) throw IoError("cannot write " + *out_path);
        Rows rows;
        for (const auto& e : report.entries) rows.emplace_back(e.key, e.value);
        print_rows(s.out, rows);
      }
      s.out << report.to_json_line() << '\n';
      return ok;
    };
  });
}

void add_config(CLI::App& app, const Common& common, Action& action) {
  auto* cmd = app.add_subcommand("config", "Print the reference configuration or check a file");
  auto reference = std::make_shared<bool>(false);
  auto out_path = std::make_shared<std::string>();
  cmd->add_flag("--reference", *reference, "Print every key with its default and meaning");
  cmd->add_option("--out", *out_path, "Write to a file instead of printing");
  cmd->callback([&common, &action, reference, out_path] {
    action = [&common, reference, out_path](Streams& s) {
      const std::string text =
          *reference ? io::reference_config() : io::serialize_config(effective_config(common));
      if (out_path->empty()) {
        s.out << text;
      } else {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f || !(f << text) || !(f.close(), f)) throw IoError("cannot write " + *out_path);
      }
      Summary sum;
      sum["command"] = "config";
      sum["format_version"] = io::kConfigFormatVersion;
      sum["reference"] = *reference;
      if (!out_path->empty()) sum["out"] = *out_path;
      print_summary(s.out, sum);
      return ok;
    };
  });
}

int fail(Streams& s, int code, const std::string& kind, const std::string& what) {
  s.err << "qnode: " << what << '\n';
  Summary sum;
  sum["error"] = kind;
  sum["message"] = what;
  sum["exit_code"] = code;
  print_summary(s.out, sum);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Streams s{out, err};
  CLI::App app{"Simulator and estimators for a single-atom quantum network node", "qnode"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "Configuration file (default: $QNODE_CONFIG)");
  app.add_option("--seed", common.seed, "Master seed; overrides the configuration");
  app.add_option("--threads", common.threads, "Worker threads");
  Action action;
  add_simulate(app, common, action);
  add_analyze(app, common, action);
  add_fit(app, action);
  add_report(app, common, action);
  add_config(app, common, action);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return ok;  // --help
    Summary sum;
    sum["error"] = "usage";
    sum["message"] = e.what();
    sum["exit_code"] = static_cast<int>(usage);
    print_summary(out, sum);
    return usage;
  }
  if (!action) return fail(s, usage, "usage", "no command given");
  try {
    return action(s);
  } catch (const ConfigError& e) {
    return fail(s, config_error, "config", e.what());
  } catch (const IoError& e) {
    return fail(s, io_error, "io", e.what());
  } catch (const FormatError& e) {
    return fail(s, format_error, "format", e.what());
  } catch (const EstimatorError& e) {
    return fail(s, estimator_failure, "estimator", e.what());
  } catch (const Error& e) {
    return fail(s, usage, "usage", e.what());
  }
}

}  // namespace qnode::cli
