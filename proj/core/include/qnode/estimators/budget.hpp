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

#include "qnode/physics/node_config.hpp"
#include "qnode/quantum/fidelity.hpp"

namespace qnode::estimators {

struct BudgetEntry {
  std::string name;
  double infidelity = 0.0;
  double uncertainty = 0.0;
  bool upper_bound = false;  // value only bounds the contribution from above
};

struct ErrorBudget {
  std::vector<BudgetEntry> entries;

  double linear_sum() const;
  double quadrature_sum() const;
};

// The node's tabulated infidelity contributions.
ErrorBudget reference_budget();

// Budget implied by a configuration's imperfection knobs.
ErrorBudget budget_from_config(const physics::NodeConfig& c);

// Total infidelity (linear sum, bounds at their bound) with the entries'
// uncertainties added in quadrature.
quantum::Estimate compose_error_budget(const ErrorBudget& budget);

}  // namespace qnode::estimators
