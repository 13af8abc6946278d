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

// Bob-start randomized pointer jumping protocol.
//
// Round 1: Bob sends, for each vertex of a public random sample S of V_B, the
// top prefix_bits(0) bits of fB(v). Every later round t sends v_t in full. If
// Alice computes some v_t in S at an even round t <= k/2, a "lead" starts at
// i = t: from then on the round-t speaker also sends, for every candidate u of
// v_{t+1} (all vertices whose code starts with the known prefix of f(v_t)),
// the top prefix_bits(t - i) bits of f(u). Prefixes grow to full width by
// round k, so the announcer learns v_{k+2} exactly.

#include <algorithm>
#include <cmath>

#include "qround/protocols.hpp"

namespace qround::cc {

namespace {

void append_bits(Bits& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back((value >> i) & 1u);
}

std::uint64_t read_bits(const Bits& bits, std::size_t offset, unsigned width) {
  if (offset + width > bits.size()) throw ProtocolError("message shorter than expected");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits[offset + i] ? 1u : 0u);
  return v;
}

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

struct Sample {
  std::vector<std::uint32_t> sorted;
  std::vector<std::int64_t> rank;  // vertex -> position in `sorted`, or -1
};

Sample draw_sample(const NwParameters& p, const PublicCoins& coins) {
  const std::size_t s = p.sample_size();
  std::vector<std::uint32_t> pool(p.n);
  for (std::size_t i = 0; i < p.n; ++i) pool[i] = static_cast<std::uint32_t>(i);
  if (s < p.n) {
    for (std::size_t j = 0; j < s; ++j) {
      const auto pick = j + coins.uniform(j, p.n - j);
      std::swap(pool[j], pool[pick]);
    }
    pool.resize(s);
  }
  std::sort(pool.begin(), pool.end());
  Sample out;
  out.rank.assign(p.n, -1);
  for (std::size_t i = 0; i < pool.size(); ++i) out.rank[pool[i]] = static_cast<std::int64_t>(i);
  out.sorted = std::move(pool);
  return out;
}

// A list of prefixes carried by one message.
struct PrefixList {
  const Bits* bits = nullptr;
  std::size_t offset = 0;       // first entry bit
  unsigned entry_bits = 0;
  std::uint32_t first = 0;      // candidate range start (ignored for the sample list)
  std::uint32_t count = 0;
  bool keyed_by_sample = false;
};

// Everything both players can derive from the public transcript.
struct PublicView {
  std::vector<std::uint32_t> path;  // path[t-1] = v_t for every v_t fixed so far
  std::optional<std::size_t> lead_start;
  std::optional<PrefixList> last_list;
};

std::uint64_t entry_for(const PrefixList& list, const Sample& sample, std::uint32_t vertex) {
  std::size_t slot = 0;
  if (list.keyed_by_sample) {
    if (sample.rank[vertex] < 0) throw ProtocolError("vertex is not in the public sample");
    slot = static_cast<std::size_t>(sample.rank[vertex]);
  } else {
    if (vertex < list.first || vertex >= list.first + list.count)
      throw ProtocolError("vertex is not among the announced candidates");
    slot = vertex - list.first;
  }
  return read_bits(*list.bits, list.offset + slot * list.entry_bits, list.entry_bits);
}

// Candidate range for the image of `vertex`, given the list describing f(vertex).
std::pair<std::uint32_t, std::uint32_t> candidates(const PrefixList& list, const Sample& sample,
                                                   std::uint32_t vertex, unsigned width) {
  const auto prefix = entry_for(list, sample, vertex);
  const unsigned free_bits = width - list.entry_bits;
  return {static_cast<std::uint32_t>(prefix << free_bits), std::uint32_t{1} << free_bits};
}

PublicView replay(const NwParameters& p, const Transcript& so_far, const Sample& sample) {
  const unsigned w = p.width();
  PublicView view;
  view.path.push_back(pj::kStart.index);
  for (std::size_t idx = 0; idx < so_far.messages.size(); ++idx) {
    const std::size_t t = idx + 1;
    const Bits& bits = so_far.messages[idx].bits;
    if (t == 1) {
      view.last_list = PrefixList{&bits, 0, p.prefix_bits(0), 0,
                                  static_cast<std::uint32_t>(sample.sorted.size()), true};
      if (bits.size() != sample.sorted.size() * p.prefix_bits(0))
        throw ProtocolError("sample list has the wrong length");
      continue;
    }
    const auto v = static_cast<std::uint32_t>(read_bits(bits, 0, w));
    view.path.push_back(v);
    const bool alice_turn = t % 2 == 0;
    if (!view.lead_start && alice_turn && t <= p.half() && sample.rank[v] >= 0)
      view.lead_start = t;
    if (view.lead_start) {
      const auto [first, count] = candidates(*view.last_list, sample, v, w);
      view.last_list = PrefixList{&bits, w, p.prefix_bits(t - *view.lead_start), first, count, false};
      if (bits.size() != w + std::size_t{count} * view.last_list->entry_bits)
        throw ProtocolError("candidate list has the wrong length");
    } else {
      view.last_list.reset();
      if (bits.size() != w) throw ProtocolError("plain round carries extra bits");
    }
  }
  return view;
}

class NwParty final : public PartyStrategy {
 public:
  NwParty(NwParameters params, Side side) : p_(params), side_(side) {}

  Action act(const PartyInput& own, const Transcript& so_far, const PublicCoins& coins,
             std::size_t round, bool my_turn) const override {
    if (!my_turn) return Silent{};
    if (own.size() != p_.n) throw ProtocolError("input size does not match protocol n");
    const unsigned w = p_.width();
    const Sample sample = draw_sample(p_, coins);

    if (round == 1) {
      Bits bits;
      for (auto v : sample.sorted) append_bits(bits, own[v] >> (w - p_.prefix_bits(0)), p_.prefix_bits(0));
      return Send{std::move(bits)};
    }

    const PublicView view = replay(p_, so_far, sample);
    // v_round is the image of the last fixed vertex under this player's pointers.
    const std::uint32_t current = own[view.path.back()];

    if (round == p_.k + 1) {
      if (!view.lead_start || !view.last_list) return Announce{0};
      const auto& list = *view.last_list;
      const auto prefix = entry_for(list, sample, current);
      return Announce{prefix << (w - list.entry_bits)};
    }

    Bits bits;
    append_bits(bits, current, w);
    std::optional<std::size_t> lead = view.lead_start;
    if (!lead && side_ == Side::A && round % 2 == 0 && round <= p_.half() &&
        sample.rank[current] >= 0)
      lead = round;
    if (lead) {
      const auto [first, count] = candidates(*view.last_list, sample, current, w);
      const unsigned entry = p_.prefix_bits(round - *lead);
      for (std::uint32_t u = first; u < first + count; ++u)
        append_bits(bits, own[u] >> (w - entry), entry);
    }
    return Send{std::move(bits)};
  }

 private:
  NwParameters p_;
  Side side_;
};

NwParameters checked_parameters(std::size_t n, std::size_t k, double epsilon) {
  if (!is_power_of_two(n) || n < 2) throw std::invalid_argument("nw_protocol: n must be a power of two >= 2");
  if (k < 4) throw std::invalid_argument("nw_protocol: k must be at least 4");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("nw_protocol: epsilon must lie in (0, 1/2)");
  return {n, k, epsilon};
}

}  // namespace

unsigned NwParameters::width() const { return pj::code_width(n); }

std::size_t NwParameters::sample_size() const {
  const double s = std::ceil((4.0 / epsilon) * (static_cast<double>(n) / static_cast<double>(k)));
  return std::min<std::size_t>(n, static_cast<std::size_t>(s));
}

unsigned NwParameters::prefix_bits(std::size_t t) const {
  const unsigned w = width();
  if (t >= half()) return w;
  const double lead = std::ceil(iterated_log(half() - t, static_cast<double>(n)));
  const double slack = std::ceil(3.0 * std::log2(static_cast<double>(k)));
  return static_cast<unsigned>(std::min<double>(w, lead + slack));
}

StrategyPair nw_protocol(std::size_t n, std::size_t k, double epsilon) {
  const auto p = checked_parameters(n, k, epsilon);
  return {std::make_shared<NwParty>(p, Side::A), std::make_shared<NwParty>(p, Side::B), Side::B, k};
}

double nw_bit_bound(std::size_t n, std::size_t k, double epsilon) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double lead = std::ceil(iterated_log(k / 2, nd));
  const double slack = 3.0 * std::ceil(std::log2(kd));
  return kNwC1 * (nd / (kd * epsilon)) * (lead + slack) + kd * pj::code_width(n) +
         kNwC2 * kd * nd / (kd * kd);
}

double nw_hit_rate(std::size_t n, std::size_t k, double epsilon, std::size_t trials,
                   std::uint64_t seed) {
  const auto p = checked_parameters(n, k, epsilon);
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(derive_seed(seed, 2 * i));
    const auto inst = pj::random_instance(n, rng);
    const PublicCoins coins(derive_seed(seed, 2 * i + 1));
    const Sample sample = draw_sample(p, coins);
    for (std::size_t t = 2; t <= p.half(); t += 2)
      if (sample.rank[pj::iterate(inst, t - 1).index] >= 0) {
        ++hits;
        break;
      }
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace qround::cc
