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

// Two-party classical protocols with exact bit and round metering.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qround/pointer_jumping.hpp"

namespace qround::cc {

using pj::Side;
using Bits = std::vector<bool>;
using PartyInput = std::vector<std::uint32_t>;

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shared random tape. Word i is a fixed function of (seed, i), so both
/// parties read the same coins; the highest index touched is recorded.
class PublicCoins {
 public:
  explicit PublicCoins(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t word(std::size_t i) const;
  /// Uniform in [0, bound) from word i (rejection-free multiply-shift).
  std::uint64_t uniform(std::size_t i, std::uint64_t bound) const;
  std::size_t consumed() const { return consumed_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  mutable std::size_t consumed_ = 0;
};

struct Message {
  Side speaker;
  Bits bits;
};

struct Transcript {
  Side starter = Side::A;
  std::vector<Message> messages;
  std::size_t coins_consumed = 0;
  std::optional<std::uint64_t> answer;
  std::optional<Side> announcer;

  std::size_t rounds() const { return messages.size(); }
  /// Metered bits; the final announcement is free.
  std::size_t total_bits() const;
};

struct Silent {};
struct Send {
  Bits bits;
};
struct Announce {
  std::uint64_t value;
};
using Action = std::variant<Silent, Send, Announce>;

/// One party's behavior. `round` is the 1-based index of the step being
/// played; `my_turn` tells the party whether it holds the floor.
class PartyStrategy {
 public:
  virtual ~PartyStrategy() = default;
  virtual Action act(const PartyInput& own, const Transcript& so_far, const PublicCoins& coins,
                     std::size_t round, bool my_turn) const = 0;
};

struct StrategyPair {
  std::shared_ptr<const PartyStrategy> alice;
  std::shared_ptr<const PartyStrategy> bob;
  Side starter = Side::A;
  /// Maximum number of metered messages.
  std::size_t max_rounds = 0;
};

/// Alternates speakers starting with `starter`. Each step both parties are
/// polled; the idle one must stay Silent. Throws ProtocolError on a message
/// out of turn, on a message after `max_rounds`, or if nobody announces.
Transcript run_protocol(const StrategyPair& protocol, const PartyInput& alice_input,
                        const PartyInput& bob_input, const PublicCoins& coins);

// --- pointer jumping protocols -------------------------------------------------

/// Alice-start k-round protocol: round t sends v_{t+1}; the owner of v_{k+1}
/// announces f_k.
StrategyPair trivial_alice_start(std::size_t k);

/// log^(0) n = n, log^(j) n = log2(log^(j-1) n), floored at 1.
double iterated_log(std::size_t j, double n);

struct NwParameters {
  std::size_t n = 0;
  std::size_t k = 0;
  double epsilon = 0.0;

  std::size_t half() const { return k / 2; }
  unsigned width() const;
  std::size_t sample_size() const;
  /// Prefix bits forwarded at lead step t (t = 0 is Bob's sample list), capped at width.
  unsigned prefix_bits(std::size_t t) const;
};

/// Bob-start k-round randomized protocol for g_k; the announcement is the
/// index of v_{k+2}. Throws std::invalid_argument outside its parameter domain.
StrategyPair nw_protocol(std::size_t n, std::size_t k, double epsilon);

/// Worst-case bit budget c1 (n/(k eps))(ceil(log^(k/2) n) + 3 ceil(log2 k))
/// + k ceil(log2 n) + c2 k n/k^2.
double nw_bit_bound(std::size_t n, std::size_t k, double epsilon);
inline constexpr double kNwC1 = 4.0;
inline constexpr double kNwC2 = 2.0;

enum class AnswerKind { kParityBit, kEndpointIndex };

struct ProtocolStats {
  std::size_t trials = 0;
  double error_rate = 0.0;
  double error_stderr = 0.0;
  std::size_t max_bits = 0;
  double mean_bits = 0.0;
  std::size_t max_rounds = 0;
  double mean_rounds = 0.0;
};

/// Derives the seed of trial `index` from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Monte Carlo over uniform instances and per-trial public coins.
ProtocolStats estimate_error(const StrategyPair& protocol, AnswerKind kind, std::size_t n,
                             std::size_t k, std::size_t trials, std::uint64_t seed);

/// Empirical probability that some Alice-computed vertex v_t (t even, t <= k/2)
/// lands in Bob's public sample.
double nw_hit_rate(std::size_t n, std::size_t k, double epsilon, std::size_t trials,
                   std::uint64_t seed);

// --- exact deterministic communication complexity -------------------------------

using BoolTable = std::vector<std::vector<bool>>;

inline constexpr std::size_t kMaxTableSide = 16;

struct ProtocolTreeNode {
  enum class Kind { kLeaf, kPass, kBit };
  Kind kind = Kind::kLeaf;
  Side speaker = Side::A;         // leaf: announcer; pass / bit: speaker
  std::uint32_t one_inputs = 0;   // leaf: announcer inputs answered with 1 (mask over table indices)
  std::uint32_t zero_branch = 0;  // bit: inputs of the speaker that send 0
  int child0 = -1;
  int child1 = -1;
};

struct ProtocolTree {
  std::vector<ProtocolTreeNode> nodes;  // nodes[0] is the root
};

struct DccResult {
  std::size_t bits = 0;
  ProtocolTree tree;
};

/// Minimum worst-case bits over deterministic protocols with at most
/// `max_rounds` messages (nullopt: unbounded) and the given starter.
/// Returns nullopt when the table exceeds 16x16 or no such protocol exists.
std::optional<DccResult> exact_dcc(const BoolTable& table, std::optional<std::size_t> max_rounds,
                                   Side starter);

struct TreeRun {
  bool value = false;
  std::size_t bits = 0;
  std::size_t rounds = 0;
};

/// Walks the protocol tree on one input pair.
TreeRun run_tree(const ProtocolTree& tree, std::size_t row, std::size_t col);

/// Table of f_k over all (fA, fB) for n vertices.
BoolTable pointer_jumping_table(std::size_t n, std::size_t k);
BoolTable parse_table(const std::string& text);

}  // namespace qround::cc
