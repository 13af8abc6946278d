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

#include "qround/disjointness.hpp"

#include <sstream>
#include <stdexcept>

namespace qround::disj {

namespace {

// Vertex j of the full path v1, v2, ..., v_{k+1} (1-based).
std::uint32_t vertex_at(const PathIndex& path, std::size_t j) {
  return j == 1 ? pj::kStart.index : path[j - 2];
}

// Consistency of every edge leaving a vertex on `side`, plus the parity test
// when the last path vertex lies on `side`.
bool includes(const std::vector<std::uint32_t>& pointers, const PathIndex& path, pj::Side side) {
  const std::size_t k = path.size();
  // v_j is on side A for odd j.
  auto on_side = [&](std::size_t j) { return (j % 2 == 1) == (side == pj::Side::A); };
  for (std::size_t j = 1; j <= k; ++j)
    if (on_side(j) && pointers.at(vertex_at(path, j)) != vertex_at(path, j + 1)) return false;
  if (on_side(k + 1)) return pj::code_parity(pointers.at(vertex_at(path, k + 1))) == 1;
  return true;
}

}  // namespace

unsigned disj(const DisjInstance& x) { return intersection_size(x) > 0 ? 1u : 0u; }

std::size_t intersection_size(const DisjInstance& x) {
  if (x.set_a.size() != x.set_b.size()) throw std::invalid_argument("sets over different universes");
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.set_a.size(); ++i) count += x.set_a[i] && x.set_b[i];
  return count;
}

std::uint64_t encode_path(const PathIndex& path, std::size_t n) {
  std::uint64_t code = 0;
  for (auto v : path) {
    if (v >= n) throw std::invalid_argument("path vertex out of range");
    code = code * n + v;
  }
  return code;
}

PathIndex decode_path(std::uint64_t code, std::size_t n, std::size_t k) {
  PathIndex path(k);
  for (std::size_t i = k; i-- > 0;) {
    path[i] = static_cast<std::uint32_t>(code % n);
    code /= n;
  }
  return path;
}

bool alice_includes(const std::vector<std::uint32_t>& fa, const PathIndex& path) {
  return includes(fa, path, pj::Side::A);
}

bool bob_includes(const std::vector<std::uint32_t>& fb, const PathIndex& path) {
  return includes(fb, path, pj::Side::B);
}

DisjInstance reduce_pj_to_disj(const pj::PointerInstance& inst, std::size_t k) {
  if (k == 0) throw std::invalid_argument("reduction needs k >= 1");
  const std::size_t n = inst.n();
  std::uint64_t universe = 1;
  for (std::size_t i = 0; i < k; ++i) {
    universe *= n;
    if (universe > (std::uint64_t{1} << 26)) throw std::invalid_argument("universe too large");
  }
  DisjInstance out;
  out.set_a.resize(universe);
  out.set_b.resize(universe);
  for (std::uint64_t code = 0; code < universe; ++code) {
    const auto path = decode_path(code, n, k);
    out.set_a[code] = alice_includes(inst.fa(), path);
    out.set_b[code] = bob_includes(inst.fb(), path);
  }
  return out;
}

std::string to_bit_strings(const DisjInstance& x) {
  std::string out;
  for (bool b : x.set_a) out += b ? '1' : '0';
  out += '\n';
  for (bool b : x.set_b) out += b ? '1' : '0';
  out += '\n';
  return out;
}

DisjInstance from_bit_strings(const std::string& text) {
  std::istringstream in(text);
  std::string a, b;
  if (!std::getline(in, a) || !std::getline(in, b))
    throw std::invalid_argument("expected two bit-string lines");
  auto parse = [](const std::string& s) {
    std::vector<bool> bits;
    for (char c : s) {
      if (c == '0' || c == '1') bits.push_back(c == '1');
      else if (c != '\r') throw std::invalid_argument("bit strings may contain only 0 and 1");
    }
    return bits;
  };
  DisjInstance x{parse(a), parse(b)};
  if (x.set_a.size() != x.set_b.size()) throw std::invalid_argument("bit strings differ in length");
  return x;
}

}  // namespace qround::disj
