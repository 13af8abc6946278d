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

#include "qround/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace qround {

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)) {
  std::unordered_set<std::string> seen;
  for (const auto& r : registers_) {
    if (r.dim < 1) throw std::invalid_argument("register '" + r.label + "' has dimension 0");
    if (!seen.insert(r.label).second)
      throw std::invalid_argument("duplicate register label '" + r.label + "'");
  }
}

RegisterLayout RegisterLayout::single(std::string label, std::size_t dim) {
  return RegisterLayout({Register{std::move(label), dim}});
}

RegisterLayout RegisterLayout::qubits(const std::string& prefix, std::size_t count) {
  std::vector<Register> regs;
  regs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) regs.push_back({prefix + std::to_string(i), 2});
  return RegisterLayout(std::move(regs));
}

std::size_t RegisterLayout::total_dim() const {
  std::size_t d = 1;
  for (const auto& r : registers_) d *= r.dim;
  return d;
}

bool RegisterLayout::contains(const std::string& label) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.label == label; });
}

std::size_t RegisterLayout::position(const std::string& label) const {
  for (std::size_t i = 0; i < registers_.size(); ++i)
    if (registers_[i].label == label) return i;
  throw std::invalid_argument("unknown register label '" + label + "'");
}

std::size_t RegisterLayout::dim_of(const std::string& label) const {
  return registers_[position(label)].dim;
}

std::vector<std::string> RegisterLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(registers_.size());
  for (const auto& r : registers_) out.push_back(r.label);
  return out;
}

RegisterLayout RegisterLayout::restrict_to(std::span<const std::string> keep) const {
  std::set<std::size_t> positions;
  for (const auto& label : keep) positions.insert(position(label));
  std::vector<Register> regs;
  for (auto p : positions) regs.push_back(registers_[p]);
  return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  auto regs = registers_;
  regs.insert(regs.end(), other.registers_.begin(), other.registers_.end());
  return RegisterLayout(std::move(regs));
}

namespace {

std::vector<std::size_t> strides_of(const RegisterLayout& layout) {
  const auto& regs = layout.registers();
  std::vector<std::size_t> strides(regs.size());
  std::size_t s = 1;
  for (std::size_t i = regs.size(); i-- > 0;) {
    strides[i] = s;
    s *= regs[i].dim;
  }
  return strides;
}

// Flat offsets contributed by every joint value of the selected registers,
// enumerated with the first selected register most significant.
std::vector<std::size_t> offsets_for(const RegisterLayout& layout,
                                     const std::vector<std::size_t>& positions) {
  const auto strides = strides_of(layout);
  std::vector<std::size_t> offsets{0};
  for (auto p : positions) {
    const std::size_t d = layout.registers()[p].dim;
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * d);
    for (auto base : offsets)
      for (std::size_t digit = 0; digit < d; ++digit) next.push_back(base + digit * strides[p]);
    offsets = std::move(next);
  }
  return offsets;
}

struct Split {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

Split split_positions(const RegisterLayout& layout, std::span<const std::string> keep) {
  std::set<std::size_t> kept;
  for (const auto& label : keep) {
    if (!kept.insert(layout.position(label)).second)
      throw std::invalid_argument("label '" + label + "' listed twice");
  }
  Split s;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (kept.count(i)) s.kept.push_back(i);
    else s.traced.push_back(i);
  }
  return s;
}

void check_square(const ComplexMatrix& m, const RegisterLayout& layout) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim())
    throw std::invalid_argument("matrix dimension " + std::to_string(m.rows()) +
                                " does not match layout dimension " +
                                std::to_string(layout.total_dim()));
}

}  // namespace

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                            std::span<const std::string> keep) {
  check_square(m, layout);
  const auto split = split_positions(layout, keep);
  const auto kmap = offsets_for(layout, split.kept);
  const auto tmap = offsets_for(layout, split.traced);
  const auto dk = static_cast<Eigen::Index>(kmap.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (auto t : tmap) acc += m(kmap[i] + t, kmap[j] + t);
      out(i, j) = acc;
    }
  return out;
}

ComplexMatrix reduced_density(const ComplexVector& psi, const RegisterLayout& layout,
                              std::span<const std::string> keep) {
  if (static_cast<std::size_t>(psi.size()) != layout.total_dim())
    throw std::invalid_argument("state dimension does not match layout");
  const auto split = split_positions(layout, keep);
  const auto kmap = offsets_for(layout, split.kept);
  const auto tmap = offsets_for(layout, split.traced);
  ComplexMatrix amps(kmap.size(), tmap.size());
  for (std::size_t i = 0; i < kmap.size(); ++i)
    for (std::size_t t = 0; t < tmap.size(); ++t) amps(i, t) = psi(kmap[i] + tmap[t]);
  return amps * amps.adjoint();
}

namespace {

std::vector<std::size_t> permutation_map(const RegisterLayout& layout,
                                         std::span<const std::string> order) {
  if (order.size() != layout.size())
    throw std::invalid_argument("permutation must list every register exactly once");
  std::vector<std::size_t> positions;
  std::set<std::size_t> seen;
  for (const auto& label : order) {
    auto p = layout.position(label);
    if (!seen.insert(p).second) throw std::invalid_argument("label '" + label + "' repeated");
    positions.push_back(p);
  }
  // new flat index (enumerated in `order`) -> old flat index
  return offsets_for(layout, positions);
}

}  // namespace

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const RegisterLayout& layout,
                                 std::span<const std::string> order) {
  check_square(m, layout);
  const auto map = permutation_map(layout, order);
  const auto d = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const RegisterLayout& layout,
                                 std::span<const std::string> order) {
  if (static_cast<std::size_t>(v.size()) != layout.total_dim())
    throw std::invalid_argument("state dimension does not match layout");
  const auto map = permutation_map(layout, order);
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(i) = v(map[i]);
  return out;
}

ComplexMatrix dephase(const ComplexMatrix& m, const RegisterLayout& layout,
                      std::span<const std::string> labels) {
  check_square(m, layout);
  const auto strides = strides_of(layout);
  std::vector<std::size_t> positions;
  for (const auto& label : labels) positions.push_back(layout.position(label));
  auto digits_match = [&](std::size_t a, std::size_t b) {
    for (auto p : positions) {
      const auto d = layout.registers()[p].dim;
      if ((a / strides[p]) % d != (b / strides[p]) % d) return false;
    }
    return true;
  };
  ComplexMatrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!digits_match(i, j)) out(i, j) = 0.0;
  return out;
}

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return m.rows() == m.cols() && max_abs_entry(m - m.adjoint()) <= tolerance;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (!all_finite(m)) throw std::invalid_argument("hermitian_eig: non-finite entry");
  if (!is_hermitian(m, tolerance))
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");
  const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: solver failed");
  // Eigen returns ascending order.
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace qround
