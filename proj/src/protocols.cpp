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

#include "qround/protocols.hpp"

#include <cmath>
#include <sstream>

namespace qround::cc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void append_bits(Bits& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back((value >> i) & 1u);
}

std::uint64_t read_bits(const Bits& bits, std::size_t offset, unsigned width) {
  if (offset + width > bits.size()) throw ProtocolError("message shorter than expected");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits[offset + i] ? 1u : 0u);
  return v;
}

class TrivialParty final : public PartyStrategy {
 public:
  explicit TrivialParty(std::size_t k) : k_(k) {}

  Action act(const PartyInput& own, const Transcript& so_far, const PublicCoins&,
             std::size_t round, bool my_turn) const override {
    if (!my_turn) return Silent{};
    const unsigned w = pj::code_width(own.size());
    // The speaker of step r always knows v_r: v_1 is fixed, later ones arrive
    // in the previous message, and v_r lies on the speaker's own side.
    const std::uint32_t current =
        round == 1 ? pj::kStart.index
                   : static_cast<std::uint32_t>(read_bits(so_far.messages.back().bits, 0, w));
    if (current >= own.size()) throw ProtocolError("received vertex out of range");
    const std::uint32_t next = own[current];
    if (round <= k_) {
      Bits bits;
      append_bits(bits, next, w);
      return Send{std::move(bits)};
    }
    return Announce{pj::code_parity(next)};
  }

 private:
  std::size_t k_;
};

}  // namespace

std::uint64_t PublicCoins::word(std::size_t i) const {
  if (i + 1 > consumed_) consumed_ = i + 1;
  return splitmix64(seed_ ^ splitmix64(i));
}

std::uint64_t PublicCoins::uniform(std::size_t i, std::uint64_t bound) const {
  const unsigned __int128 product = static_cast<unsigned __int128>(word(i)) * bound;
  return static_cast<std::uint64_t>(product >> 64);
}

std::size_t Transcript::total_bits() const {
  std::size_t total = 0;
  for (const auto& m : messages) total += m.bits.size();
  return total;
}

Transcript run_protocol(const StrategyPair& protocol, const PartyInput& alice_input,
                        const PartyInput& bob_input, const PublicCoins& coins) {
  if (!protocol.alice || !protocol.bob) throw std::invalid_argument("protocol is missing a party");
  Transcript transcript;
  transcript.starter = protocol.starter;
  Side speaker = protocol.starter;
  auto strategy = [&](Side s) -> const PartyStrategy& {
    return s == Side::A ? *protocol.alice : *protocol.bob;
  };
  auto input = [&](Side s) -> const PartyInput& { return s == Side::A ? alice_input : bob_input; };

  for (std::size_t step = 1;; ++step) {
    const Side idle = pj::other(speaker);
    const Action active = strategy(speaker).act(input(speaker), transcript, coins, step, true);
    const Action waiting = strategy(idle).act(input(idle), transcript, coins, step, false);
    if (!std::holds_alternative<Silent>(waiting))
      throw ProtocolError(std::string("party ") + pj::side_name(idle) + " acted out of turn at step " +
                          std::to_string(step));
    if (const auto* a = std::get_if<Announce>(&active)) {
      transcript.answer = a->value;
      transcript.announcer = speaker;
      break;
    }
    if (step > protocol.max_rounds)
      throw ProtocolError("message beyond the round limit of " + std::to_string(protocol.max_rounds));
    Bits bits;
    if (const auto* s = std::get_if<Send>(&active)) bits = s->bits;
    transcript.messages.push_back({speaker, std::move(bits)});
    speaker = idle;
  }
  transcript.coins_consumed = coins.consumed();
  return transcript;
}

StrategyPair trivial_alice_start(std::size_t k) {
  if (k < 1) throw std::invalid_argument("trivial_alice_start needs k >= 1");
  auto party = std::make_shared<TrivialParty>(k);
  return {party, party, Side::A, k};
}

double iterated_log(std::size_t j, double n) {
  double v = n;
  for (std::size_t i = 0; i < j; ++i) {
    if (v <= 1.0) return 1.0;
    v = std::log2(v);
    if (v <= 1.0) return 1.0;
  }
  return v;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

ProtocolStats estimate_error(const StrategyPair& protocol, AnswerKind kind, std::size_t n,
                             std::size_t k, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  ProtocolStats stats;
  stats.trials = trials;
  std::size_t errors = 0;
  double bit_sum = 0.0;
  double round_sum = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(derive_seed(seed, 2 * i));
    const auto inst = pj::random_instance(n, rng);
    const PublicCoins coins(derive_seed(seed, 2 * i + 1));
    const auto transcript = run_protocol(protocol, inst.fa(), inst.fb(), coins);
    const std::uint64_t expected =
        kind == AnswerKind::kParityBit ? pj::f_k(inst, k) : pj::g_k(inst, k).index;
    if (!transcript.answer || *transcript.answer != expected) ++errors;
    stats.max_bits = std::max(stats.max_bits, transcript.total_bits());
    stats.max_rounds = std::max(stats.max_rounds, transcript.rounds());
    bit_sum += static_cast<double>(transcript.total_bits());
    round_sum += static_cast<double>(transcript.rounds());
  }
  const double t = static_cast<double>(trials);
  stats.error_rate = static_cast<double>(errors) / t;
  stats.error_stderr = std::sqrt(stats.error_rate * (1.0 - stats.error_rate) / t);
  stats.mean_bits = bit_sum / t;
  stats.mean_rounds = round_sum / t;
  return stats;
}

BoolTable pointer_jumping_table(std::size_t n, std::size_t k) {
  const auto instances = pj::all_instances(n);
  std::size_t tables = 1;
  for (std::size_t i = 0; i < n; ++i) tables *= n;
  BoolTable table(tables, std::vector<bool>(tables));
  for (std::size_t i = 0; i < instances.size(); ++i)
    table[i / tables][i % tables] = pj::f_k(instances[i], k) != 0;
  return table;
}

BoolTable parse_table(const std::string& text) {
  BoolTable table;
  std::vector<bool> row;
  auto flush = [&] {
    if (!row.empty()) table.push_back(std::move(row));
    row.clear();
  };
  for (char c : text) {
    if (c == '0' || c == '1') row.push_back(c == '1');
    else if (c == ';' || c == ',' || c == '\n' || c == '/') flush();
    else if (c != ' ' && c != '\t' && c != '\r')
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in table");
  }
  flush();
  if (table.empty()) throw std::invalid_argument("empty table");
  for (const auto& r : table)
    if (r.size() != table.front().size()) throw std::invalid_argument("ragged table");
  return table;
}

}  // namespace qround::cc
