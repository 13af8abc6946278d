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

#include <cmath>

#include "qround/protocols.hpp"

using namespace qround;
using namespace qround::cc;

TEST_CASE("public coins are a fixed function of seed and index") {
  PublicCoins a(42), b(42), c(43);
  CHECK(a.word(7) == b.word(7));
  CHECK(a.word(7) != c.word(7));
  CHECK(a.uniform(3, 10) < 10);
  CHECK(a.consumed() >= 8);
}

TEST_CASE("trivial protocol is exact and meters k ceil(log2 n) bits") {
  for (std::size_t n : {2u, 4u}) {
    const auto all = pj::all_instances(n);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto proto = trivial_alice_start(k);
      for (const auto& inst : all) {
        const auto tr = run_protocol(proto, inst.fa(), inst.fb(), PublicCoins(0));
        REQUIRE(tr.answer.has_value());
        CHECK(*tr.answer == pj::f_k(inst, k));
        CHECK(tr.total_bits() == k * pj::code_width(n));
        CHECK(tr.rounds() == k);
        CHECK(tr.messages.front().speaker == Side::A);
      }
    }
  }
}

TEST_CASE("run_protocol rejects out of turn speech") {
  struct Chatty : PartyStrategy {
    Action act(const PartyInput&, const Transcript&, const PublicCoins&, std::size_t,
               bool) const override {
      return Send{{true}};
    }
  };
  auto chatty = std::make_shared<Chatty>();
  StrategyPair p{chatty, chatty, Side::A, 3};
  CHECK_THROWS_AS(run_protocol(p, {0}, {0}, PublicCoins(1)), ProtocolError);
}

TEST_CASE("iterated logarithm") {
  CHECK(iterated_log(0, 1024) == doctest::Approx(1024));
  CHECK(iterated_log(1, 1024) == doctest::Approx(10));
  CHECK(iterated_log(2, 1024) == doctest::Approx(std::log2(10.0)));
  CHECK(iterated_log(5, 1024) == doctest::Approx(1.0));
}

TEST_CASE("nw bit bound formula") {
  // n = 256, k = 4, eps = 1/8: 4 * 512 * (3 + 6) + 32 + 2 * 64
  const double expected = kNwC1 * (256.0 / (4 * 0.125)) * (3 + 3 * 2) + 4 * 8 + kNwC2 * 4 * 256 / 16.0;
  CHECK(nw_bit_bound(256, 4, 0.125) == doctest::Approx(expected));
  CHECK_THROWS_AS(nw_protocol(256, 1, 0.125), std::invalid_argument);
  CHECK_THROWS_AS(nw_protocol(256, 4, 0.0), std::invalid_argument);
}

TEST_CASE("nw protocol is reproducible and within its bit budget") {
  const auto proto = nw_protocol(256, 8, 0.125);
  const auto a = estimate_error(proto, AnswerKind::kEndpointIndex, 256, 8, 200, 5);
  const auto b = estimate_error(proto, AnswerKind::kEndpointIndex, 256, 8, 200, 5);
  CHECK(a.error_rate == b.error_rate);
  CHECK(a.max_bits == b.max_bits);
  CHECK(a.mean_bits == b.mean_bits);
  CHECK(a.max_rounds <= 8);
  CHECK(static_cast<double>(a.max_bits) <= nw_bit_bound(256, 8, 0.125));
  CHECK(a.error_rate <= 0.125 + 3 * std::sqrt(0.125 * 0.875 / 200));
}

TEST_CASE("nw error shrinks as epsilon shrinks") {
  const std::size_t n = 1024, k = 64, trials = 1500;
  double last = 1.0;
  for (double eps : {0.45, 0.3, 0.2}) {
    const auto st = estimate_error(nw_protocol(n, k, eps), AnswerKind::kEndpointIndex, n, k, trials, 21);
    CHECK(st.error_rate <= eps + 3 * std::sqrt(eps * (1 - eps) / trials));
    CHECK(st.error_rate <= last + 3 * std::sqrt(0.25 / trials));
    last = st.error_rate;
  }
}

TEST_CASE("estimate_error rejects zero trials") {
  CHECK_THROWS_AS(estimate_error(trivial_alice_start(2), AnswerKind::kParityBit, 4, 2, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("parse_table") {
  const auto t = parse_table("01;10");
  REQUIRE(t.size() == 2);
  CHECK(t[0][1]);
  CHECK_FALSE(t[1][1]);
  CHECK_THROWS_AS(parse_table("01;1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_table("0x"), std::invalid_argument);
}

TEST_CASE("alice reaches a sampled vertex early with probability at least 1 - eps") {
  for (double eps : {0.45, 0.3, 0.2}) {
    const std::size_t trials = 2000;
    const double hit = nw_hit_rate(1024, 64, eps, trials, 17);
    MESSAGE("eps " << eps << " hit rate " << hit);
    CHECK(hit >= 1.0 - eps - 3 * std::sqrt(eps * (1 - eps) / trials));
  }
}
