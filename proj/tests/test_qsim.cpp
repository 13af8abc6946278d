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

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "qround/qsim.hpp"
#include "qround/quantum_info.hpp"

using namespace qround;
using namespace qround::qsim;

namespace {

using Key = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

std::map<Key, std::array<double, 2>> by_input(const std::vector<OutcomeRecord>& records) {
  std::map<Key, std::array<double, 2>> out;
  for (const auto& r : records) out[{r.fa, r.fb}][r.output] += r.probability;
  return out;
}

double measured_error(const SimulationResult& sim) {
  double e = 0.0;
  for (const auto& r : sim.measured_distribution)
    if (r.output != pj::f_k(pj::PointerInstance(r.fa, r.fb), sim.spec.k)) e += r.probability;
  return e;
}

QProtocolSpec bare(std::size_t k) {
  QProtocolSpec s;
  s.name = "bare";
  s.k = k;
  s.rounds.resize(k);
  s.work = {{"a", Side::A}, {"b", Side::B}};
  s.output = "a";
  return s;
}

}  // namespace

TEST_CASE("identity protocol answers 0 on every input") {
  const auto sim = run_superposed(toy_protocol("identity"));
  CHECK(sim.distribution.size() == 16);
  for (const auto& r : sim.distribution) {
    CHECK(r.output == 0);
    CHECK(r.probability == doctest::Approx(1.0 / 16));
  }
  CHECK(sim.error == doctest::Approx(0.5));
  CHECK(sim.communicated_qubits == 0);
}

TEST_CASE("classical embedding is correct on every input") {
  for (const char* name : {"classical_k1", "classical_k2", "relay_k2", "trivial_k1"}) {
    const auto sim = run_superposed(toy_protocol(name));
    CHECK(sim.error == doctest::Approx(0.0).epsilon(1e-12));
    for (const auto& r : sim.distribution) {
      if (r.probability < 1e-12) continue;
      CHECK(r.output == pj::f_k(pj::PointerInstance(r.fa, r.fb), sim.spec.k));
    }
  }
}

TEST_CASE("branch probabilities sum to one") {
  for (const auto& name : toy_protocol_names()) {
    const auto sim = run_superposed(toy_protocol(name));
    for (const auto* snaps : {&sim.before, &sim.after})
      for (const auto& snap : *snaps) {
        double total = 0.0;
        for (const auto& b : snap.branches) total += b.probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
  }
}

TEST_CASE("intermediate pointer measurements leave the output law unchanged") {
  for (const auto& name : toy_protocol_names()) {
    const auto sim = run_superposed(toy_protocol(name));
    const auto u = by_input(sim.distribution);
    const auto m = by_input(sim.measured_distribution);
    REQUIRE(u.size() == m.size());
    for (const auto& [key, p] : u) {
      CHECK(m.at(key)[0] == doctest::Approx(p[0]).epsilon(1e-10));
      CHECK(m.at(key)[1] == doctest::Approx(p[1]).epsilon(1e-10));
    }
    CHECK(measured_error(sim) == doctest::Approx(sim.error).epsilon(1e-10));
  }
}

TEST_CASE("verbatim copy of fB(0) against a hand-built state") {
  const auto sim = run_superposed(toy_protocol("verbatim_k1"));
  CHECK(sim.error == doctest::Approx(0.25));
  CHECK(sim.delta == doctest::Approx(0.5));

  // After V_2 = fA(0) is measured Alice holds m0 = fB(0). If v2 = 0 the pair
  // (m0, fB(v2)) is a perfectly correlated uniform bit; if v2 = 1 it is a
  // product of two uniform bits.
  const RegisterLayout mp({{"M", 2}, {"P", 2}});
  const std::vector<std::string> m{"M"}, p{"P"};
  const std::vector<double> correlated{0.5, 0.0, 0.0, 0.5}, uniform{0.25, 0.25, 0.25, 0.25};
  const double d_hit = informational_distance(DensityMatrix::diagonal(correlated).with_layout(mp), m, p);
  const double d_miss = informational_distance(DensityMatrix::diagonal(uniform).with_layout(mp), m, p);
  CHECK(round_distance(sim, 2) == doctest::Approx(0.5 * d_hit + 0.5 * d_miss).epsilon(1e-12));
  CHECK(round_distance(sim, 2) == doctest::Approx(0.5));
  CHECK(round_distance(sim, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("input independent protocol has vanishing diagnostics") {
  const auto sim = run_superposed(toy_protocol("product"));
  for (const auto& row : diagnose(sim)) {
    CHECK(row.d == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(row.info_unmeasured == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(row.mean_gamma == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(row.mean_beta == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(sim.error == doctest::Approx(0.5));
}

TEST_CASE("information grows by at most two bits per transferred qubit") {
  const auto sim = run_superposed(toy_protocol("classical_k1"));
  const auto before = info_bound(sim, 1);
  CHECK(before.unmeasured == doctest::Approx(0.0).epsilon(1e-9));
  const auto after = info_bound(sim, 2);
  // Two CNOT copies of |+> form two Bell pairs across the cut: 2 bits each.
  CHECK(after.unmeasured == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(after.bound == doctest::Approx(2.0 * sim.communicated_qubits));
  CHECK(after.unmeasured <= after.bound + kSimTolerance);
}

TEST_CASE("round inequalities on every Bob-start toy and on random specs") {
  std::vector<QProtocolSpec> specs;
  for (const auto& name : toy_protocol_names()) specs.push_back(toy_protocol(name));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 6; ++i) specs.push_back(random_protocol(1 + i % 2, rng));
  std::size_t bob_start = 0;
  for (const auto& spec : specs) {
    CAPTURE(spec.name);
    const auto sim = run_superposed(spec);
    const auto diag = diagnose(sim);
    REQUIRE(diag.size() == spec.k + 1);
    const auto rep = check_induction(diag, sim.delta, measured_error(sim), spec.starter);
    CHECK(rep.info_holds);
    if (spec.starter != Side::B) {
      CHECK_FALSE(rep.rounds_applicable);
      continue;
    }
    ++bob_start;
    CHECK(rep.start_is_zero);
    CHECK(std::abs(diag[0].d) <= 1e-9);
    for (const auto& c : rep.rounds) {
      CHECK(c.recursion_holds);
      CHECK(c.gamma_holds);
      CHECK(c.beta_holds);
    }
  }
  CHECK(bob_start >= 5);
}

TEST_CASE("endpoint check on one-round protocols") {
  for (const char* name : {"classical_k1", "verbatim_k1", "leak_k1"}) {
    CAPTURE(name);
    const auto sim = run_superposed(toy_protocol(name));
    const auto diag = diagnose(sim);
    const auto rep = check_induction(diag, sim.delta, measured_error(sim));
    CHECK(rep.endpoint_applicable);
    CHECK(rep.endpoint_holds);
    CHECK(diag.back().d >= 1.0 / 3 - kSimTolerance);
  }
}

TEST_CASE("the path returning to v1 hides the answer from d_{k+1}") {
  // On cycles v3 = v1 the final pointer is already measured, so correct
  // answers there carry no informational distance.
  const auto sim = run_superposed(toy_protocol("cycle_guess_k2"));
  CHECK(sim.error == doctest::Approx(0.25));
  CHECK(round_distance(sim, 3) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spec json round trip") {
  std::mt19937_64 rng(8);
  for (const auto& spec : {toy_protocol("leak_k2"), toy_protocol("classical_k2"), random_protocol(2, rng)}) {
    const auto text = spec_to_json(spec);
    const auto back = spec_from_json(text);
    CHECK(spec_to_json(back) == text);
    const auto a = run_superposed(spec);
    const auto b = run_superposed(back);
    CHECK(a.error == doctest::Approx(b.error).epsilon(1e-12));
    CHECK(round_distance(a, spec.k + 1) == doctest::Approx(round_distance(b, spec.k + 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(spec_from_json("{\"name\": 3}"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from_json("not json"), std::invalid_argument);
}

TEST_CASE("register misuse is rejected") {
  const auto fa0 = input_qubit(Side::A, 0, 0);
  CHECK(fa0 == "FA0.0");
  CHECK(pointer_qubits(Side::B, 1, 4) == std::vector<std::string>{"FB1.0", "FB1.1"});
  CHECK(speaker(Side::B, 1) == Side::B);
  CHECK(speaker(Side::B, 2) == Side::A);

  CHECK_NOTHROW(run_superposed(bare(1)));

  auto target_input = bare(1);
  target_input.rounds[0].gates = {Gate::named("x", {input_qubit(Side::B, 0, 0)})};
  CHECK_THROWS_AS(run_superposed(target_input), std::invalid_argument);

  auto send_input = bare(1);
  send_input.rounds[0].send = {input_qubit(Side::B, 0, 0)};
  CHECK_THROWS_AS(run_superposed(send_input), std::invalid_argument);

  auto foreign = bare(1);
  foreign.rounds[0].gates = {Gate::named("x", {"a"})};  // round 1 is Bob's
  CHECK_THROWS_AS(run_superposed(foreign), std::invalid_argument);

  auto foreign_control = bare(1);
  foreign_control.rounds[0].gates = {Gate::named("cx", {input_qubit(Side::A, 0, 0), "b"})};
  CHECK_THROWS_AS(run_superposed(foreign_control), std::invalid_argument);

  auto unknown = bare(1);
  unknown.rounds[0].gates = {Gate::named("x", {"zz"})};
  CHECK_THROWS_AS(run_superposed(unknown), std::invalid_argument);

  auto not_unitary = bare(1);
  Gate g = Gate::named("x", {"b"});
  g.matrix(0, 0) = 2.0;
  not_unitary.rounds[0].gates = {g};
  CHECK_THROWS_AS(run_superposed(not_unitary), std::invalid_argument);

  auto bad_output = bare(1);
  bad_output.output = "b";  // Alice announces
  CHECK_THROWS_AS(run_superposed(bad_output), std::invalid_argument);

  auto wrong_rounds = bare(2);
  wrong_rounds.rounds.pop_back();
  CHECK_THROWS_AS(run_superposed(wrong_rounds), std::invalid_argument);

  auto too_big = bare(1);
  too_big.n = 8;
  CHECK_THROWS_AS(run_superposed(too_big), std::invalid_argument);

  CHECK_THROWS_AS(toy_protocol("nope"), std::invalid_argument);
  CHECK_THROWS_AS(Gate::named("nope", {"a"}), std::invalid_argument);
}
