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

// Set disjointness and the reduction of pointer jumping to it over the
// universe of length-k paths from v1.

#include <cstdint>
#include <string>
#include <vector>

#include "qround/pointer_jumping.hpp"

namespace qround::disj {

struct DisjInstance {
  std::vector<bool> set_a;
  std::vector<bool> set_b;

  std::size_t universe() const { return set_a.size(); }
};

/// 1 iff the sets intersect.
unsigned disj(const DisjInstance& x);
std::size_t intersection_size(const DisjInstance& x);

/// (v2, ..., v_{k+1}) as vertex indices; sides alternate B, A, B, ... from v2.
using PathIndex = std::vector<std::uint32_t>;

/// Lexicographic position of a path in [0, n^k).
std::uint64_t encode_path(const PathIndex& path, std::size_t n);
PathIndex decode_path(std::uint64_t code, std::size_t n, std::size_t k);

/// Membership of one path in one player's set; uses only that player's pointers.
bool alice_includes(const std::vector<std::uint32_t>& fa, const PathIndex& path);
bool bob_includes(const std::vector<std::uint32_t>& fb, const PathIndex& path);

/// Universe n^k; throws std::invalid_argument for k == 0 or n^k > 2^26.
DisjInstance reduce_pj_to_disj(const pj::PointerInstance& inst, std::size_t k);

/// Bit strings ("0110...") for both sets, one per line.
std::string to_bit_strings(const DisjInstance& x);
DisjInstance from_bit_strings(const std::string& text);

}  // namespace qround::disj
