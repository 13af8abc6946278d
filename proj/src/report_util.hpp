// Copyright 2026 The qround Authors
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

// Shared plumbing for the experiment suites.

#include <string>
#include <vector>

#include "qround/experiments.hpp"

namespace qround::exp::detail {

Json echo(const ExperimentConfig& config);

/// Report with the provenance columns followed by `columns`.
Report start_report(const std::string& suite, const ExperimentConfig& config,
                    const std::vector<std::string>& columns);

/// Appends a row; the provenance cells are filled in.
void add_row(Report& report, Row cells);

std::uint64_t require_seed(const ExperimentConfig& config);
std::size_t trials_or(const ExperimentConfig& config, std::size_t fallback);

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

/// Smallest margin seen for one inequality; a margin below -tolerance is a violation.
struct MarginTracker {
  double tolerance = 0.0;
  double min_margin = 0.0;
  std::size_t samples = 0;
  std::size_t violations = 0;

  explicit MarginTracker(double tol) : tolerance(tol) {}
  void add(double margin);
  bool ok() const { return violations == 0; }
};

}  // namespace qround::exp::detail
