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

// Built-in protocol specs over n = 2 (one qubit per pointer).

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qround/qsim.hpp"
#include "qround/quantum_info.hpp"

namespace qround::qsim {

namespace {

const std::string kA0 = "FA0.0";
const std::string kA1 = "FA1.0";
const std::string kB0 = "FB0.0";
const std::string kB1 = "FB1.0";

std::uint32_t bit_of(std::uint32_t x, unsigned width, unsigned i) { return x >> (width - 1 - i) & 1u; }

// out ^= (sel ? m1 : m0) on (sel, m0, m1, out).
Gate select_gate(const std::string& sel, const std::string& m0, const std::string& m1,
                 const std::string& out) {
  return Gate::from_function({sel, m0, m1, out}, [](std::uint32_t x) {
    const auto pick = bit_of(x, 4, 0) ? bit_of(x, 4, 2) : bit_of(x, 4, 1);
    return x ^ pick;
  });
}

ComplexMatrix ry(double theta) {
  ComplexMatrix m(2, 2);
  m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return m;
}

Gate controlled_ry(const std::string& control, const std::string& target, double theta) {
  return Gate::controlled_pair(control, {target}, ComplexMatrix::Identity(2, 2), ry(theta));
}

QProtocolSpec base(std::string name, std::size_t k, Side starter) {
  QProtocolSpec s;
  s.name = std::move(name);
  s.n = 2;
  s.k = k;
  s.starter = starter;
  s.rounds.resize(k);
  return s;
}

QProtocolSpec identity() {
  auto s = base("identity", 1, Side::B);
  s.work = {{"out", Side::A}};
  s.output = "out";
  return s;
}

QProtocolSpec product() {
  auto s = base("product", 2, Side::B);
  s.work = {{"b0", Side::B}, {"a0", Side::A}, {"out", Side::B}};
  s.rounds[0] = {{Gate::named("h", {"b0"})}, {"b0"}};
  s.rounds[1] = {{Gate::named("h", {"a0"}), Gate::named("cx", {"a0", "b0"})}, {"a0"}};
  s.announce = {Gate::named("cx", {"a0", "out"})};
  s.output = "out";
  return s;
}

// Alice sends v2 = fA(0); Bob announces the parity of fB(v2).
QProtocolSpec trivial_k1() {
  auto s = base("trivial_k1", 1, Side::A);
  s.work = {{"a0", Side::A}, {"out", Side::B}};
  s.rounds[0] = {{Gate::named("cx", {kA0, "a0"})}, {"a0"}};
  s.announce = {select_gate("a0", kB0, kB1, "out")};
  s.output = "out";
  return s;
}

// Bob sends all of fB; Alice looks up fB(fA(0)).
QProtocolSpec classical_k1() {
  auto s = base("classical_k1", 1, Side::B);
  s.work = {{"m0", Side::B}, {"m1", Side::B}, {"out", Side::A}};
  s.rounds[0] = {{Gate::named("cx", {kB0, "m0"}), Gate::named("cx", {kB1, "m1"})}, {"m0", "m1"}};
  s.announce = {select_gate(kA0, "m0", "m1", "out")};
  s.output = "out";
  return s;
}

// Bob stays silent; Alice sends all of fA; Bob follows the path himself.
QProtocolSpec classical_k2() {
  auto s = base("classical_k2", 2, Side::B);
  s.work = {{"m0", Side::A}, {"m1", Side::A}, {"out", Side::B}};
  s.rounds[1] = {{Gate::named("cx", {kA0, "m0"}), Gate::named("cx", {kA1, "m1"})}, {"m0", "m1"}};
  s.announce = {Gate::from_function({"m0", "m1", kB0, kB1, "out"}, [](std::uint32_t x) {
    const std::uint32_t m[2] = {bit_of(x, 5, 0), bit_of(x, 5, 1)};
    const std::uint32_t fb[2] = {bit_of(x, 5, 2), bit_of(x, 5, 3)};
    return x ^ m[fb[m[0]]];
  })};
  s.output = "out";
  return s;
}

// Bob sends fB, Alice evaluates the whole path and sends the answer bit.
QProtocolSpec relay_k2() {
  auto s = base("relay_k2", 2, Side::B);
  s.work = {{"b0", Side::B}, {"b1", Side::B}, {"c", Side::A}, {"out", Side::B}};
  s.rounds[0] = {{Gate::named("cx", {kB0, "b0"}), Gate::named("cx", {kB1, "b1"})}, {"b0", "b1"}};
  s.rounds[1] = {{Gate::from_function({kA0, kA1, "b0", "b1", "c"}, [](std::uint32_t x) {
                   const std::uint32_t fa[2] = {bit_of(x, 5, 0), bit_of(x, 5, 1)};
                   const std::uint32_t fb[2] = {bit_of(x, 5, 2), bit_of(x, 5, 3)};
                   return x ^ fa[fb[fa[0]]];
                 })},
                 {"c"}};
  s.announce = {Gate::named("cx", {"c", "out"})};
  s.output = "out";
  return s;
}

// Bob sends fB(0) verbatim; Alice answers with it when fA(0) = 0 and with 0 otherwise.
QProtocolSpec verbatim_k1() {
  auto s = base("verbatim_k1", 1, Side::B);
  s.work = {{"m0", Side::B}, {"out", Side::A}};
  s.rounds[0] = {{Gate::named("cx", {kB0, "m0"})}, {"m0"}};
  s.announce = {Gate::from_function({kA0, "m0", "out"}, [](std::uint32_t x) {
    return bit_of(x, 3, 0) ? x : x ^ bit_of(x, 3, 1);
  })};
  s.output = "out";
  return s;
}

// Bob sends rotated, partially informative copies of fB.
QProtocolSpec leak_k1() {
  auto s = base("leak_k1", 1, Side::B);
  s.work = {{"m0", Side::B}, {"m1", Side::B}, {"out", Side::A}};
  s.rounds[0] = {{controlled_ry(kB0, "m0", 2.0), controlled_ry(kB1, "m1", 2.0)}, {"m0", "m1"}};
  s.announce = {select_gate(kA0, "m0", "m1", "out")};
  s.output = "out";
  return s;
}

QProtocolSpec leak_k2() {
  auto s = relay_k2();
  s.name = "leak_k2";
  s.rounds[0].gates = {controlled_ry(kB0, "b0", 2.2), controlled_ry(kB1, "b1", 1.4),
                       Gate::named("h", {"b1"})};
  return s;
}

// Alice sends fA(0); Bob answers correctly when the path returns to v1 and
// guesses 0 otherwise.
QProtocolSpec cycle_guess_k2() {
  auto s = base("cycle_guess_k2", 2, Side::B);
  s.work = {{"a0", Side::A}, {"out", Side::B}};
  s.rounds[1] = {{Gate::named("cx", {kA0, "a0"})}, {"a0"}};
  s.announce = {Gate::from_function({"a0", kB0, kB1, "out"}, [](std::uint32_t x) {
    const std::uint32_t v2 = bit_of(x, 4, 0);
    const std::uint32_t fb[2] = {bit_of(x, 4, 1), bit_of(x, 4, 2)};
    return fb[v2] == 0 ? x ^ v2 : x;
  })};
  s.output = "out";
  return s;
}

}  // namespace

std::vector<std::string> toy_protocol_names() {
  return {"identity", "product", "trivial_k1", "classical_k1", "classical_k2",
          "relay_k2", "verbatim_k1", "leak_k1", "leak_k2", "cycle_guess_k2"};
}

QProtocolSpec toy_protocol(const std::string& name) {
  if (name == "identity") return identity();
  if (name == "product") return product();
  if (name == "trivial_k1") return trivial_k1();
  if (name == "classical_k1") return classical_k1();
  if (name == "classical_k2") return classical_k2();
  if (name == "relay_k2") return relay_k2();
  if (name == "verbatim_k1") return verbatim_k1();
  if (name == "leak_k1") return leak_k1();
  if (name == "leak_k2") return leak_k2();
  if (name == "cycle_guess_k2") return cycle_guess_k2();
  throw std::invalid_argument("unknown toy protocol '" + name + "'");
}

QProtocolSpec random_protocol(std::size_t k, std::mt19937_64& rng) {
  if (k == 0) throw std::invalid_argument("random_protocol: k must be at least 1");
  auto s = base("random_k" + std::to_string(k), k, Side::B);
  s.work = {{"a0", Side::A}, {"a1", Side::A}, {"b0", Side::B}, {"b1", Side::B}};
  std::vector<Side> owner = {Side::A, Side::A, Side::B, Side::B};

  auto held = [&](Side p) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < owner.size(); ++i)
      if (owner[i] == p) out.push_back(s.work[i].name);
    return out;
  };
  auto local_gate = [&](Side p) {
    auto targets = held(p);
    std::shuffle(targets.begin(), targets.end(), rng);
    if (targets.size() > 2) targets.resize(2);
    const auto inputs = input_register(p, s.n);
    const auto control = inputs[std::uniform_int_distribution<std::size_t>(0, inputs.size() - 1)(rng)];
    const std::size_t dim = std::size_t{1} << targets.size();
    const auto u0 = random_unitary(dim, rng);
    const auto u1 = random_unitary(dim, rng);
    return Gate::controlled_pair(control, targets, u0, u1);
  };

  for (std::size_t t = 1; t <= k; ++t) {
    const Side p = speaker(s.starter, t);
    RoundSpec& round = s.rounds[t - 1];
    if (!held(p).empty()) {
      round.gates.push_back(local_gate(p));
      const auto mine = held(p);
      const auto pick = mine[std::uniform_int_distribution<std::size_t>(0, mine.size() - 1)(rng)];
      round.send.push_back(pick);
      for (std::size_t i = 0; i < owner.size(); ++i)
        if (s.work[i].name == pick) owner[i] = pj::other(p);
    }
  }
  const Side announcer = speaker(s.starter, k + 1);
  s.announce.push_back(local_gate(announcer));
  s.output = held(announcer).front();
  return s;
}

}  // namespace qround::qsim
