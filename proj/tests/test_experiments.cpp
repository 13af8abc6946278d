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

#include <doctest.h>

#include <string>

#include "qround/experiments.hpp"

using namespace qround::exp;

namespace {

ExperimentConfig make(const std::string& suite, std::uint64_t seed = 7) {
  ExperimentConfig c;
  c.suite = suite;
  c.seed = seed;
  return c;
}

std::size_t col(const Report& r, const std::string& name) {
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    if (r.columns[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("rows start with the provenance columns") {
  auto c = make("reduce-disj");
  c.n = {2};
  c.k = {1};
  const auto r = run_suite(c);
  REQUIRE(r.columns.size() >= 3);
  CHECK(r.columns[0] == "suite");
  CHECK(r.columns[1] == "seed");
  CHECK(r.columns[2] == "config_hash");
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0][0] == "reduce-disj");
  CHECK(r.rows[0][1] == 7);
  CHECK(r.rows[0][2] == r.config_hash);
  CHECK(r.config_hash == fnv1a_hex(r.config.dump()));
}

TEST_CASE("reduction summary at n = 2") {
  auto c = make("reduce-disj");
  c.n = {2};
  c.k = {1, 2};
  const auto r = run_suite(c);
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) CHECK(row[col(r, "summary")] == "16/16 match");
  CHECK(r.exit_code == kExitPass);
}

TEST_CASE("same seed gives byte-identical output") {
  for (const char* suite : {"verify-qit", "run-pj", "reduce-disj", "exact-cc", "qsim"}) {
    CAPTURE(suite);
    auto c = make(suite, 11);
    c.trials = 20;
    if (std::string(suite) == "verify-qit") c.dims = {2, 3};
    if (std::string(suite) == "run-pj") {
      c.n = {256};
      c.k = {4};
    }
    if (std::string(suite) == "reduce-disj") c.n = {2, 4}, c.k = {2};
    if (std::string(suite) == "exact-cc") c.k = {1};
    if (std::string(suite) == "qsim") c.specs = {"classical_k1", "random"}, c.trials = 2;
    for (Format f : {Format::kCsv, Format::kJson}) {
      const auto a = render(run_suite(c), f);
      const auto b = render(run_suite(c), f);
      CHECK(a == b);
      CHECK_FALSE(a.empty());
    }
  }
}

TEST_CASE("different seeds differ where randomness is used") {
  auto a = make("verify-qit", 1), b = make("verify-qit", 2);
  a.dims = b.dims = {2};
  a.trials = b.trials = 10;
  CHECK(render(run_suite(a), Format::kCsv) != render(run_suite(b), Format::kCsv));
}

TEST_CASE("configuration errors") {
  ExperimentConfig no_seed;
  no_seed.suite = "verify-qit";
  CHECK_THROWS_AS(run_suite(no_seed), ConfigError);

  auto zero = make("run-pj");
  zero.trials = 0;
  CHECK_THROWS_AS(run_suite(zero), ConfigError);

  auto bad_n = make("run-pj");
  bad_n.n = {100};
  CHECK_THROWS_AS(run_suite(bad_n), ConfigError);

  auto bad_eps = make("run-pj");
  bad_eps.eps = {0.7};
  CHECK_THROWS_AS(run_suite(bad_eps), ConfigError);

  auto bad_fn = make("exact-cc");
  bad_fn.function = "xor";
  CHECK_THROWS_AS(run_suite(bad_fn), ConfigError);

  auto bad_spec = make("qsim");
  bad_spec.specs = {"nope"};
  CHECK_THROWS_AS(run_suite(bad_spec), ConfigError);

  CHECK_THROWS_AS(run_suite(make("unknown")), ConfigError);
}

TEST_CASE("config json overlay") {
  ExperimentConfig c;
  apply_config_json(c, R"({"suite": "run-pj", "seed": 5, "n": [256], "k": 4, "eps": 0.125,
                           "format": "json", "protocol": "trivial"})");
  CHECK(c.suite == "run-pj");
  CHECK(*c.seed == 5);
  CHECK(c.n == std::vector<std::size_t>{256});
  CHECK(c.k == std::vector<std::size_t>{4});
  CHECK(c.format == Format::kJson);
  CHECK_THROWS_AS(apply_config_json(c, R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(c, "[1, 2]"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(c, R"({"seed": "x"})"), ConfigError);
}

TEST_CASE("csv header carries the config echo") {
  auto c = make("exact-cc");
  c.function = "eq";
  c.n = {2};
  const auto text = render(run_suite(c), Format::kCsv);
  CHECK(text.rfind("# config {", 0) == 0);
  const auto json = Json::parse(render(run_suite(c), Format::kJson));
  CHECK(json["suite"] == "exact-cc");
  CHECK(json["rows"].is_array());
  CHECK(json["rows"][0]["dcc_bits"] == 1);
}

TEST_CASE("qsim flags the endpoint counterexamples") {
  auto ok = make("qsim");
  ok.specs = {"classical_k1", "verbatim_k1", "relay_k2"};
  CHECK(run_suite(ok).exit_code == kExitPass);
  auto bad = make("qsim");
  bad.specs = {"cycle_guess_k2"};
  CHECK(run_suite(bad).exit_code == kExitViolation);
}
