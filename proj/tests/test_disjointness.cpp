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

#include "qround/disjointness.hpp"

namespace pj = qround::pj;
using namespace qround::disj;

namespace {

// The path actually taken from v1, as (v2, ..., v_{k+1}).
PathIndex true_path(const pj::PointerInstance& inst, std::size_t k) {
  PathIndex p;
  for (std::size_t t = 1; t <= k; ++t) p.push_back(pj::iterate(inst, t).index);
  return p;
}

void check_instance(const pj::PointerInstance& inst, std::size_t k) {
  const auto x = reduce_pj_to_disj(inst, k);
  const auto n = inst.n();
  std::uint64_t universe = 1;
  for (std::size_t i = 0; i < k; ++i) universe *= n;
  REQUIRE(x.universe() == universe);
  CHECK(disj(x) == pj::f_k(inst, k));
  CHECK(intersection_size(x) <= 1);
  if (disj(x)) {
    const auto code = encode_path(true_path(inst, k), n);
    CHECK(x.set_a[code]);
    CHECK(x.set_b[code]);
  }
}

}  // namespace

TEST_CASE("disj and intersection size") {
  DisjInstance x{{true, false, true}, {false, false, true}};
  CHECK(disj(x) == 1);
  CHECK(intersection_size(x) == 1);
  DisjInstance y{{true, false}, {false, true}};
  CHECK(disj(y) == 0);
}

TEST_CASE("path codes are lexicographic") {
  CHECK(encode_path({0, 0, 0}, 2) == 0);
  CHECK(encode_path({1, 0, 1}, 2) == 5);
  CHECK(encode_path({3, 1}, 4) == 13);
  for (std::uint64_t c = 0; c < 64; ++c) CHECK(encode_path(decode_path(c, 4, 3), 4) == c);
}

TEST_CASE("reduction is exact on every instance at n = 2") {
  for (const auto& inst : pj::all_instances(2))
    for (std::size_t k = 1; k <= 2; ++k) check_instance(inst, k);
}

TEST_CASE("reduction on random instances at n = 4") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = pj::random_instance(4, rng);
    for (std::size_t k = 1; k <= 3; ++k) check_instance(inst, k);
  }
}

TEST_CASE("membership uses only one player's pointers") {
  std::mt19937_64 rng(1);
  const auto a = pj::random_instance(4, rng);
  const auto b = pj::random_instance(4, rng);
  const pj::PointerInstance mixed(a.fa(), b.fb());
  const auto xa = reduce_pj_to_disj(a, 3);
  const auto xm = reduce_pj_to_disj(mixed, 3);
  CHECK(xa.set_a == xm.set_a);
}

TEST_CASE("bit string round trip and limits") {
  std::mt19937_64 rng(4);
  const auto x = reduce_pj_to_disj(pj::random_instance(2, rng), 2);
  const auto y = from_bit_strings(to_bit_strings(x));
  CHECK(y.set_a == x.set_a);
  CHECK(y.set_b == x.set_b);
  CHECK_THROWS_AS(reduce_pj_to_disj(pj::PointerInstance({0, 0}, {0, 0}), 0), std::invalid_argument);
  CHECK_THROWS_AS(from_bit_strings("01\n1"), std::invalid_argument);
}
