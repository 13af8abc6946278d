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

// Seeded batch suites behind the command-line tool. Every suite returns a
// table whose rows start with the provenance columns suite, seed, config_hash.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qround::exp {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfigError = 2;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Format { kCsv, kJson };

struct ExperimentConfig {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::vector<std::size_t> n;
  std::vector<std::size_t> k;
  std::vector<double> eps;
  std::vector<std::size_t> dims;
  std::string out;
  Format format = Format::kCsv;

  std::string protocol = "all";        // run-pj: nw, trivial, all
  std::string function = "pj";         // exact-cc: const, eq, pj, disj, table
  std::string table;                   // exact-cc with function = table
  std::vector<std::size_t> rounds;     // exact-cc round limits; empty = unbounded
  std::string starter = "A";           // exact-cc
  std::vector<std::string> specs;      // qsim built-in names, "random"
  std::string spec_file;               // qsim JSON spec
};

/// Overlays the keys present in a JSON object onto `config`. Throws ConfigError.
void apply_config_json(ExperimentConfig& config, const std::string& text);

using Json = nlohmann::json;
using Row = std::vector<Json>;

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  Json config;               // echo of the effective configuration
  std::string config_hash;   // FNV-1a of the echo, hex
  std::vector<std::string> columns;
  std::vector<Row> rows;
  int exit_code = kExitPass;
};

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string render(const Report& report, Format format);

Report cmd_verify_qit(const ExperimentConfig& config);
Report cmd_run_pj(const ExperimentConfig& config);
Report cmd_reduce_disj(const ExperimentConfig& config);
Report cmd_exact_cc(const ExperimentConfig& config);
Report cmd_qsim(const ExperimentConfig& config);

/// Dispatches on config.suite. Throws ConfigError for unknown suites or bad values.
Report run_suite(const ExperimentConfig& config);

}  // namespace qround::exp
