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

// qround: batch runner for the verification suites and protocol benchmarks.
//
//   qround <verify-qit|run-pj|reduce-disj|exact-cc|qsim> --seed S [options]
//
// Exit status: 0 all checks pass, 1 a checked invariant failed, 2 bad configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qround/experiments.hpp"

namespace {

using qround::exp::ExperimentConfig;

struct Flags {
  std::string config_file;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> n, k, dims, rounds;
  std::vector<double> eps;
  std::string out, format, protocol, function, table, starter, spec;
  std::vector<std::string> specs;
};

struct Options {
  CLI::Option* seed = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* format = nullptr;
};

Options add_common(CLI::App* cmd, Flags& f) {
  Options o;
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its keys");
  o.seed = cmd->add_option("--seed", f.seed, "master seed (required)");
  o.trials = cmd->add_option("--trials", f.trials, "trial count");
  cmd->add_option("--n", f.n, "vertex counts / table sizes")->delimiter(',');
  cmd->add_option("--k", f.k, "pointer jumping depths")->delimiter(',');
  cmd->add_option("--eps", f.eps, "error targets")->delimiter(',');
  cmd->add_option("--dims", f.dims, "Hilbert space dimensions")->delimiter(',');
  cmd->add_option("--out", f.out, "output file (default: stdout)");
  o.format = cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qround::exp::ConfigError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig build_config(const std::string& suite, const Flags& f, const Options& o, CLI::App* cmd) {
  ExperimentConfig c;
  if (!f.config_file.empty()) qround::exp::apply_config_json(c, read_file(f.config_file));
  c.suite = suite;
  if (o.seed->count()) c.seed = f.seed;
  if (o.trials->count()) c.trials = f.trials;
  if (!f.n.empty()) c.n = f.n;
  if (!f.k.empty()) c.k = f.k;
  if (!f.eps.empty()) c.eps = f.eps;
  if (!f.dims.empty()) c.dims = f.dims;
  if (!f.out.empty()) c.out = f.out;
  if (o.format->count()) c.format = f.format == "json" ? qround::exp::Format::kJson : qround::exp::Format::kCsv;
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--protocol")) c.protocol = f.protocol;
  if (given("--function")) c.function = f.function;
  if (given("--table")) c.table = f.table;
  if (given("--rounds")) c.rounds = f.rounds;
  if (given("--starter")) c.starter = f.starter;
  if (given("--spec")) c.spec_file = f.spec;
  if (given("--specs")) c.specs = f.specs;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qround: quantum round-complexity verification suites"};
  app.require_subcommand(1);
  Flags f;
  std::vector<std::pair<CLI::App*, Options>> cmds;
  const std::pair<const char*, const char*> suites[] = {
      {"verify-qit", "randomized checks of the entropy and distance inequalities"},
      {"run-pj", "error and bit statistics of the pointer jumping protocols"},
      {"reduce-disj", "pointer jumping to disjointness reduction against f_k"},
      {"exact-cc", "exact deterministic communication complexity of small tables"},
      {"qsim", "round diagnostics of simulated quantum protocols"}};
  for (const auto& [name, about] : suites) {
    CLI::App* cmd = app.add_subcommand(name, about);
    cmds.emplace_back(cmd, add_common(cmd, f));
  }
  cmds[1].first->add_option("--protocol", f.protocol, "nw, trivial or all");
  cmds[3].first->add_option("--function", f.function, "const, eq, pj, disj or table");
  cmds[3].first->add_option("--table", f.table, "rows of 0/1 separated by ';'");
  cmds[3].first->add_option("--rounds", f.rounds, "round limits")->delimiter(',');
  cmds[3].first->add_option("--starter", f.starter, "A or B");
  cmds[4].first->add_option("--spec", f.spec, "JSON protocol spec file");
  cmds[4].first->add_option("--specs", f.specs, "built-in spec names, or random")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qround::exp::kExitConfigError;
  }

  for (auto& [cmd, opts] : cmds) {
    if (!cmd->parsed()) continue;
    try {
      const auto config = build_config(cmd->get_name(), f, opts, cmd);
      const auto report = qround::exp::run_suite(config);
      const std::string text = qround::exp::render(report, config.format);
      if (config.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(config.out, std::ios::binary);
        if (!out) throw qround::exp::ConfigError("cannot write " + config.out);
        out << text;
      }
      return report.exit_code;
    } catch (const std::invalid_argument& e) {
      std::cerr << "qround: " << e.what() << "\n";
      return qround::exp::kExitConfigError;
    }
  }
  return qround::exp::kExitConfigError;
}
