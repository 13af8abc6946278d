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

// Exact deterministic communication complexity by memoized protocol-tree search.
//
// A state is (rows R, cols C, speaker, rounds left). The speaker either ends
// the current message (the floor passes, one round is used up) or sends one
// more bit, splitting its side of the rectangle in two. A rectangle costs
// nothing once one player can read the answer off its own input (every row, or
// every column, is constant on it): that player announces for free.

#include <limits>
#include <unordered_map>

#include "qround/protocols.hpp"

namespace qround::cc {

namespace {

using Mask = std::uint32_t;
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

struct Reduced {
  BoolTable table;
  std::vector<std::size_t> row_class;  // original row -> reduced row
  std::vector<std::size_t> col_class;
};

Reduced deduplicate(const BoolTable& table) {
  Reduced r;
  const std::size_t rows = table.size();
  const std::size_t cols = table.front().size();
  std::vector<std::vector<bool>> unique_rows;
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t cls = unique_rows.size();
    for (std::size_t u = 0; u < unique_rows.size(); ++u)
      if (unique_rows[u] == table[i]) cls = u;
    if (cls == unique_rows.size()) unique_rows.push_back(table[i]);
    r.row_class.push_back(cls);
  }
  std::vector<std::vector<bool>> unique_cols;
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<bool> column(unique_rows.size());
    for (std::size_t u = 0; u < unique_rows.size(); ++u) column[u] = unique_rows[u][j];
    std::size_t cls = unique_cols.size();
    for (std::size_t c = 0; c < unique_cols.size(); ++c)
      if (unique_cols[c] == column) cls = c;
    if (cls == unique_cols.size()) unique_cols.push_back(column);
    r.col_class.push_back(cls);
  }
  r.table.assign(unique_rows.size(), std::vector<bool>(unique_cols.size()));
  for (std::size_t u = 0; u < unique_rows.size(); ++u)
    for (std::size_t c = 0; c < unique_cols.size(); ++c) r.table[u][c] = unique_cols[c][u];
  return r;
}

class Solver {
 public:
  explicit Solver(const BoolTable& table)
      : rows_(table.size()), cols_(table.front().size()), col_ones_(cols_, 0) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Mask ones = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (table[i][j]) {
          ones |= Mask{1} << j;
          col_ones_[j] |= Mask{1} << i;
        }
      row_ones_.push_back(ones);
    }
  }

  Mask all_rows() const { return (Mask{1} << rows_) - 1; }
  Mask all_cols() const { return (Mask{1} << cols_) - 1; }

  // Alice knows the value iff each of her rows is constant on C.
  bool alice_knows(Mask r, Mask c) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if ((r >> i & 1u) && (row_ones_[i] & c) != 0 && (row_ones_[i] & c) != c) return false;
    return true;
  }

  bool bob_knows(Mask r, Mask c) const {
    for (std::size_t j = 0; j < cols_; ++j)
      if ((c >> j & 1u) && (col_ones_[j] & r) != 0 && (col_ones_[j] & r) != r) return false;
    return true;
  }

  std::size_t cost(Mask r, Mask c, Side s, std::size_t left) {
    if (alice_knows(r, c) || bob_knows(r, c)) return 0;
    if (left == 0) return kInf;
    const std::uint64_t key = (std::uint64_t{r} << 40) | (std::uint64_t{c} << 16) |
                              (std::uint64_t{s == Side::B} << 15) | left;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::size_t best = cost(r, c, pj::other(s), left - 1);
    const Mask side = s == Side::A ? r : c;
    const Mask low = side & (~side + 1);
    const Mask rest = side ^ low;
    // Subsets containing the lowest element; the complement covers the mirror split.
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask zero = sub | low;
      if (zero != side && best > 1) {
        const Mask one = side ^ zero;
        const std::size_t c0 = s == Side::A ? cost(zero, c, s, left) : cost(r, zero, s, left);
        if (c0 + 1 < best) {
          const std::size_t c1 = s == Side::A ? cost(one, c, s, left) : cost(r, one, s, left);
          const std::size_t total = 1 + std::max(c0, c1);
          if (total < best) best = total;
        }
      }
      if (sub == 0) break;
    }
    memo_.emplace(key, best);
    return best;
  }

  int build(Mask r, Mask c, Side s, std::size_t left, ProtocolTree& tree, const Reduced& red) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (alice_knows(r, c) || bob_knows(r, c)) {
      auto& node = tree.nodes[id];
      node.kind = ProtocolTreeNode::Kind::kLeaf;
      node.speaker = alice_knows(r, c) ? Side::A : Side::B;
      Mask ones = 0;
      if (node.speaker == Side::A) {
        for (std::size_t i = 0; i < rows_; ++i)
          if ((r >> i & 1u) && (row_ones_[i] & c) != 0) ones |= Mask{1} << i;
      } else {
        for (std::size_t j = 0; j < cols_; ++j)
          if ((c >> j & 1u) && (col_ones_[j] & r) != 0) ones |= Mask{1} << j;
      }
      node.one_inputs = expand(ones, node.speaker == Side::A ? red.row_class : red.col_class);
      return id;
    }
    const std::size_t target = cost(r, c, s, left);
    const Mask side = s == Side::A ? r : c;
    const Mask low = side & (~side + 1);
    const Mask rest = side ^ low;
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask zero = sub | low;
      if (zero != side) {
        const Mask one = side ^ zero;
        const auto c0 = s == Side::A ? cost(zero, c, s, left) : cost(r, zero, s, left);
        const auto c1 = s == Side::A ? cost(one, c, s, left) : cost(r, one, s, left);
        if (1 + std::max(c0, c1) == target) {
          auto& node = tree.nodes[id];
          node.kind = ProtocolTreeNode::Kind::kBit;
          node.speaker = s;
          node.zero_branch = expand(zero, s == Side::A ? red.row_class : red.col_class);
          const int a = s == Side::A ? build(zero, c, s, left, tree, red) : build(r, zero, s, left, tree, red);
          const int b = s == Side::A ? build(one, c, s, left, tree, red) : build(r, one, s, left, tree, red);
          tree.nodes[id].child0 = a;
          tree.nodes[id].child1 = b;
          return id;
        }
      }
      if (sub == 0) break;
    }
    if (cost(r, c, pj::other(s), left - 1) == target) {
      tree.nodes[id].kind = ProtocolTreeNode::Kind::kPass;
      tree.nodes[id].speaker = s;
      const int child = build(r, c, pj::other(s), left - 1, tree, red);
      tree.nodes[id].child0 = child;
      return id;
    }
    throw std::logic_error("exact_dcc: failed to reconstruct an optimal protocol");
  }

 private:
  static Mask expand(Mask reduced, const std::vector<std::size_t>& classes) {
    Mask out = 0;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (reduced >> classes[i] & 1u) out |= Mask{1} << i;
    return out;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Mask> row_ones_;
  std::vector<Mask> col_ones_;  // rows holding a 1 in each column
  std::unordered_map<std::uint64_t, std::size_t> memo_;
};

}  // namespace

std::optional<DccResult> exact_dcc(const BoolTable& table, std::optional<std::size_t> max_rounds,
                                   Side starter) {
  if (table.empty() || table.front().empty()) throw std::invalid_argument("exact_dcc: empty table");
  for (const auto& row : table)
    if (row.size() != table.front().size()) throw std::invalid_argument("exact_dcc: ragged table");
  if (table.size() > kMaxTableSide || table.front().size() > kMaxTableSide) return std::nullopt;

  const Reduced red = deduplicate(table);
  Solver solver(red.table);
  // Without a limit, more messages than splittable inputs plus one pass each never help.
  const std::size_t left =
      max_rounds.value_or(2 * (red.table.size() + red.table.front().size()) + 2);
  const std::size_t bits = solver.cost(solver.all_rows(), solver.all_cols(), starter, left);
  if (bits >= kInf) return std::nullopt;
  DccResult result;
  result.bits = bits;
  solver.build(solver.all_rows(), solver.all_cols(), starter, left, result.tree, red);
  return result;
}

TreeRun run_tree(const ProtocolTree& tree, std::size_t row, std::size_t col) {
  TreeRun run;
  bool message_open = false;
  int id = 0;
  while (true) {
    const auto& node = tree.nodes.at(static_cast<std::size_t>(id));
    switch (node.kind) {
      case ProtocolTreeNode::Kind::kLeaf:
        run.value = node.one_inputs >> (node.speaker == Side::A ? row : col) & 1u;
        if (message_open) ++run.rounds;
        return run;
      case ProtocolTreeNode::Kind::kPass:
        ++run.rounds;
        message_open = false;
        id = node.child0;
        break;
      case ProtocolTreeNode::Kind::kBit: {
        const std::size_t input = node.speaker == Side::A ? row : col;
        ++run.bits;
        message_open = true;
        id = (node.zero_branch >> input & 1u) ? node.child0 : node.child1;
        break;
      }
    }
  }
}

}  // namespace qround::cc
