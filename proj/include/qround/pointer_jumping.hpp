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

// Pointer jumping on two vertex sides V_A, V_B of n vertices each.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qround::pj {

enum class Side : std::uint8_t { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
char side_name(Side s);

struct Vertex {
  Side side = Side::A;
  std::uint32_t index = 0;

  bool operator==(const Vertex&) const = default;
};

/// fA maps V_A -> V_B, fB maps V_B -> V_A.
class PointerInstance {
 public:
  PointerInstance(std::vector<std::uint32_t> fa, std::vector<std::uint32_t> fb);

  std::size_t n() const { return fa_.size(); }
  const std::vector<std::uint32_t>& fa() const { return fa_; }
  const std::vector<std::uint32_t>& fb() const { return fb_; }
  const std::vector<std::uint32_t>& pointers(Side s) const { return s == Side::A ? fa_ : fb_; }

  bool operator==(const PointerInstance&) const = default;

 private:
  std::vector<std::uint32_t> fa_;
  std::vector<std::uint32_t> fb_;
};

/// Width of the fixed binary code of a vertex index: ceil(log2 n).
unsigned code_width(std::size_t n);
/// XOR of the `code_width(n)` low bits of `index`.
unsigned code_parity(std::uint32_t index);

inline constexpr Vertex kStart{Side::A, 0};

Vertex jump(const PointerInstance& inst, Vertex v);
/// f^(k)(v1) with v1 = (A, 0).
Vertex iterate(const PointerInstance& inst, std::size_t k);
/// The (k+1)-st pointer image of v1.
Vertex g_k(const PointerInstance& inst, std::size_t k);
unsigned f_k(const PointerInstance& inst, std::size_t k);

PointerInstance random_instance(std::size_t n, std::mt19937_64& rng);
/// Every instance over n vertices, fA-major, each table in lexicographic order.
std::vector<PointerInstance> all_instances(std::size_t n);

/// {"n": ..., "fA": [...], "fB": [...]}
std::string to_json(const PointerInstance& inst);
PointerInstance instance_from_json(const std::string& text);

}  // namespace qround::pj
