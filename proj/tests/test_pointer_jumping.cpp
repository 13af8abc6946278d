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

#include <random>
#include <stdexcept>

#include "qround/pointer_jumping.hpp"

using namespace qround::pj;

namespace {

// Walks the two tables directly; v1 = (A, 0), returns the index of v_{steps+1}.
std::uint32_t walk(const std::vector<std::uint32_t>& fa, const std::vector<std::uint32_t>& fb,
                   std::size_t steps, bool& on_a) {
  std::uint32_t v = 0;
  on_a = true;
  for (std::size_t i = 0; i < steps; ++i) {
    v = on_a ? fa[v] : fb[v];
    on_a = !on_a;
  }
  return v;
}

unsigned parity(std::uint32_t x, unsigned width) {
  unsigned p = 0;
  for (unsigned b = 0; b < width; ++b) p ^= (x >> b) & 1u;
  return p;
}

}  // namespace

TEST_CASE("code width") {
  CHECK(code_width(1) == 0);
  CHECK(code_width(2) == 1);
  CHECK(code_width(3) == 2);
  CHECK(code_width(4) == 2);
  CHECK(code_width(1024) == 10);
  CHECK(code_width(1025) == 11);
}

TEST_CASE("constant zero pointers") {
  PointerInstance inst({0, 0}, {0, 0});
  for (std::size_t k = 1; k <= 5; ++k) {
    CHECK(g_k(inst, k).index == 0);
    CHECK(f_k(inst, k) == 0);
  }
}

TEST_CASE("g_k and f_k against a direct walk") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(4, rng);
    for (std::size_t k = 1; k <= 6; ++k) {
      bool on_a = true;
      const auto idx = walk(inst.fa(), inst.fb(), k + 1, on_a);
      const Vertex g = g_k(inst, k);
      CHECK(g.index == idx);
      CHECK((g.side == Side::A) == on_a);
      CHECK(f_k(inst, k) == parity(idx, 2));
    }
  }
}

TEST_CASE("iterate alternates sides") {
  std::mt19937_64 rng(3);
  const auto inst = random_instance(8, rng);
  for (std::size_t t = 0; t < 10; ++t) CHECK(iterate(inst, t).side == (t % 2 == 0 ? Side::A : Side::B));
}

TEST_CASE("f_k is a fair bit when the endpoint lies in V_B") {
  std::mt19937_64 rng(99);
  const int trials = 4000;
  for (std::size_t k : {2u, 4u}) {
    int ones = 0;
    for (int i = 0; i < trials; ++i) ones += f_k(random_instance(16, rng), k);
    const double p = static_cast<double>(ones) / trials;
    CHECK(std::abs(p - 0.5) <= 3.0 * std::sqrt(0.25 / trials));
  }
}

TEST_CASE("odd k is biased by walks that return to v1") {
  // Exhaustive over all 4^8 tables; the endpoint lies in V_A and equals v1 on some cycles.
  std::vector<std::uint32_t> fa(4), fb(4);
  std::size_t ones[5] = {0, 0, 0, 0, 0};
  for (std::uint32_t code = 0; code < 65536; ++code) {
    for (int i = 0; i < 4; ++i) {
      fa[i] = (code >> (2 * i)) & 3;
      fb[i] = (code >> (8 + 2 * i)) & 3;
    }
    const PointerInstance inst(fa, fb);
    for (std::size_t k = 1; k <= 4; ++k) ones[k] += f_k(inst, k);
  }
  CHECK(ones[1] == 32768);
  CHECK(ones[2] == 32768);
  CHECK(ones[3] == 26624);  // 13/32
  CHECK(ones[4] == 32768);
}

TEST_CASE("all_instances enumerates every pair once") {
  const auto all = all_instances(2);
  REQUIRE(all.size() == 16);
  CHECK(all.front() == PointerInstance({0, 0}, {0, 0}));
  CHECK(all[1] == PointerInstance({0, 0}, {0, 1}));
  CHECK(all.back() == PointerInstance({1, 1}, {1, 1}));
  CHECK(all_instances(3).size() == 729);
}

TEST_CASE("json round trip and validation") {
  PointerInstance inst({1, 2, 0}, {2, 2, 1});
  CHECK(instance_from_json(to_json(inst)) == inst);
  CHECK_THROWS_AS(PointerInstance({0, 3}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PointerInstance({0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS(instance_from_json("{\"n\": 2, \"fA\": [0]}"));
}
