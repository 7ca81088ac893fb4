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
#include <cmath>
#include <memory>
#include <ostream>

#include "commands.hpp"
#include "qnode/error.hpp"
#include "qnode/estimators/fits.hpp"
#include "qnode/io/table_io.hpp"

namespace qnode::cli {
namespace {

using estimators::FitResult;

enum class FitKind { decay, ramsey, rabi, parity };

struct FitOpts {
  std::string input;
  std::string residuals;
  std::string curve;
};

struct Columns {
  const char* x;
  const char* y;
};

Columns columns_of(FitKind k) {
  switch (k) {
    case FitKind::decay: return {"t_ns", "counts"};
    case FitKind::ramsey:
    case FitKind::rabi: return {"t_us", "population"};
    case FitKind::parity: return {"beta_deg", "parity"};
  }
  return {"", ""};
}

const char* name_of(FitKind k) {
  switch (k) {
    case FitKind::decay: return "decay";
    case FitKind::ramsey: return "ramsey";
    case FitKind::rabi: return "rabi";
    case FitKind::parity: return "parity";
  }
  return "";
}

// Inverse binomial variances from a shots column, smoothed away from 0 and 1.
std::vector<double> binomial_weights(const std::vector<double>& p, const std::vector<double>& n) {
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = (p[i] * n[i] + 0.5) / (n[i] + 1.0);
    w[i] = n[i] / (q * (1.0 - q));
  }
  return w;
}

int run_fit(Streams& s, FitKind kind, const FitOpts& o) {
  const io::Table t = io::read_table_file(o.input);
  const Columns cols = columns_of(kind);
  for (const char* c : {cols.x, cols.y})
    if (!t.has(c)) throw InvalidArgument(o.input + " has no '" + c + "' column");
  const auto x = t.column(cols.x);
  const auto y = t.column(cols.y);
  std::vector<double> weights;
  if (kind != FitKind::decay && t.has("shots")) weights = binomial_weights(y, t.column("shots"));

  FitResult r;
  double width = 0.0;
  switch (kind) {
    case FitKind::decay: {
      if (x.size() < 2) throw EstimatorError("decay fit needs at least two bins");
      width = x[1] - x[0];
      for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i] - x[i - 1] - width) > 1e-9 * std::max(1.0, std::abs(width)))
          throw InvalidArgument("decay histogram bins must be evenly spaced");
      estimators::Histogram h{x[0] - 0.5 * width, width, y};
      r = estimators::fit_decay_histogram(h);
      break;
    }
    case FitKind::ramsey: r = estimators::fit_ramsey(x, y, weights); break;
    case FitKind::rabi: r = estimators::fit_rabi(x, y, weights); break;
    case FitKind::parity: r = estimators::fit_parity(x, y, weights); break;
  }

  auto model = [&](double xv) {
    switch (kind) {
      case FitKind::decay: return estimators::decay_bin_counts(xv - 0.5 * width, width, r.values);
      case FitKind::ramsey: return estimators::ramsey_model(xv, r.values);
      case FitKind::rabi: return estimators::rabi_model(xv, r.values);
      case FitKind::parity: return estimators::parity_model(xv, r.values);
    }
    return 0.0;
  };

  if (!o.residuals.empty()) {
    io::Table out;
    out.comments.push_back(std::string(name_of(kind)) + " fit residuals");
    out.columns = {cols.x, cols.y, "model", "residual"};
    for (std::size_t i = 0; i < x.size(); ++i) out.add_row({x[i], y[i], model(x[i]), y[i] - model(x[i])});
    io::write_table_file(o.residuals, out);
  }
  if (!o.curve.empty()) {
    io::Table out;
    out.comments.push_back(std::string(name_of(kind)) + " fitted model");
    out.columns = {cols.x, "model"};
    constexpr int kSamples = 500;
    const double lo = x.front(), hi = x.back();
    for (int i = 0; i < kSamples; ++i) {
      const double xv = lo + (hi - lo) * i / (kSamples - 1);
      out.add_row({xv, model(xv)});
    }
    io::write_table_file(o.curve, out);
  }

  Rows rows;
  Summary j;
  j["command"] = std::string("fit ") + name_of(kind);
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    const bool bound = i == 0 && r.lower_bound_only;
    rows.emplace_back(r.names[i], (bound ? "> " : "") + fmt(r.values[i], 6) + " +- " + fmt(r.errors[i], 6));
    j[r.names[i]] = r.values[i];
    j[r.names[i] + "_sigma"] = r.errors[i];
  }
  rows.emplace_back("rss / dof", fmt(r.rss, 4) + " / " + std::to_string(r.dof));
  rows.emplace_back("iterations", std::to_string(r.iterations));
  rows.emplace_back("converged", r.converged ? "yes" : "NO");
  if (!r.note.empty()) rows.emplace_back("note", r.note);
  print_rows(s.out, rows);
  j["rss"] = r.rss;
  j["dof"] = r.dof;
  j["converged"] = r.converged;
  j["lower_bound_only"] = r.lower_bound_only;
  if (!r.converged) {
    s.err << "qnode: fit did not converge\n";
    j["exit_code"] = static_cast<int>(estimator_failure);
  }
  print_summary(s.out, j);
  return r.converged ? ok : estimator_failure;
}

}  // namespace

void add_fit(CLI::App& app, Action& action) {
  auto* fit = app.add_subcommand("fit", "Fit a model to a delimiter-separated table");
  fit->require_subcommand(1);
  for (const auto kind : {FitKind::decay, FitKind::ramsey, FitKind::rabi, FitKind::parity}) {
    auto o = std::make_shared<FitOpts>();
    const Columns cols = columns_of(kind);
    auto* c = fit->add_subcommand(name_of(kind), std::string("Columns ") + cols.x + ", " + cols.y +
                                                     (kind == FitKind::decay ? "" : " (optional shots)"));
    c->add_option("input", o->input, "Table path")->required();
    c->add_option("--residuals", o->residuals, "Write data, model and residual per row");
    c->add_option("--curve", o->curve, "Write the fitted model on a fine grid");
    c->callback([&action, o, kind] { action = [o, kind](Streams& s) { return run_fit(s, kind, *o); }; });
  }
}

}  // namespace qnode::cli
