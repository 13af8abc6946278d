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

#include "qround/pointer_jumping.hpp"

#include <bit>
#include <stdexcept>

#include <json.hpp>

namespace qround::pj {

char side_name(Side s) { return s == Side::A ? 'A' : 'B'; }

PointerInstance::PointerInstance(std::vector<std::uint32_t> fa, std::vector<std::uint32_t> fb)
    : fa_(std::move(fa)), fb_(std::move(fb)) {
  if (fa_.empty() || fa_.size() != fb_.size())
    throw std::invalid_argument("pointer tables must be nonempty and of equal length");
  const auto n = fa_.size();
  for (auto v : fa_)
    if (v >= n) throw std::invalid_argument("fA pointer out of range");
  for (auto v : fb_)
    if (v >= n) throw std::invalid_argument("fB pointer out of range");
}

unsigned code_width(std::size_t n) {
  unsigned w = 0;
  while ((std::size_t{1} << w) < n) ++w;
  return w;
}

unsigned code_parity(std::uint32_t index) { return std::popcount(index) & 1u; }

Vertex jump(const PointerInstance& inst, Vertex v) {
  if (v.index >= inst.n()) throw std::invalid_argument("vertex index out of range");
  return {other(v.side), inst.pointers(v.side)[v.index]};
}

Vertex iterate(const PointerInstance& inst, std::size_t k) {
  Vertex v = kStart;
  for (std::size_t i = 0; i < k; ++i) v = jump(inst, v);
  return v;
}

Vertex g_k(const PointerInstance& inst, std::size_t k) { return iterate(inst, k + 1); }

unsigned f_k(const PointerInstance& inst, std::size_t k) { return code_parity(g_k(inst, k).index); }

PointerInstance random_instance(std::size_t n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  std::vector<std::uint32_t> fa(n), fb(n);
  for (auto& v : fa) v = pick(rng);
  for (auto& v : fb) v = pick(rng);
  return {std::move(fa), std::move(fb)};
}

std::vector<PointerInstance> all_instances(std::size_t n) {
  std::size_t tables = 1;
  for (std::size_t i = 0; i < n; ++i) tables *= n;
  auto decode = [n](std::size_t code) {
    std::vector<std::uint32_t> t(n);
    for (std::size_t i = n; i-- > 0;) {
      t[i] = static_cast<std::uint32_t>(code % n);
      code /= n;
    }
    return t;
  };
  std::vector<PointerInstance> out;
  out.reserve(tables * tables);
  for (std::size_t a = 0; a < tables; ++a)
    for (std::size_t b = 0; b < tables; ++b) out.emplace_back(decode(a), decode(b));
  return out;
}

std::string to_json(const PointerInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n();
  j["fA"] = inst.fa();
  j["fB"] = inst.fb();
  return j.dump();
}

PointerInstance instance_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PointerInstance inst(j.at("fA").get<std::vector<std::uint32_t>>(),
                       j.at("fB").get<std::vector<std::uint32_t>>());
  if (j.at("n").get<std::size_t>() != inst.n())
    throw std::invalid_argument("instance record: n does not match table lengths");
  return inst;
}

}  // namespace qround::pj
