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

// Dense complex linear algebra for desk-scale quantum states.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qround {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Register {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const Register&) const = default;
};

/// Ordered list of labeled tensor factors. The first register is the most
/// significant one in the flat basis index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  /// One register of the given dimension.
  static RegisterLayout single(std::string label, std::size_t dim);
  /// `count` qubit registers labeled prefix0, prefix1, ...
  static RegisterLayout qubits(const std::string& prefix, std::size_t count);

  const std::vector<Register>& registers() const { return registers_; }
  std::size_t size() const { return registers_.size(); }
  std::size_t total_dim() const;
  bool contains(const std::string& label) const;
  /// Position of `label`; throws std::invalid_argument when absent.
  std::size_t position(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const;
  std::vector<std::string> labels() const;

  /// Sub-layout with the given labels, in layout order.
  RegisterLayout restrict_to(std::span<const std::string> keep) const;
  /// Concatenation; labels must stay unique.
  RegisterLayout concat(const RegisterLayout& other) const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<Register> registers_;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors; // columns, unitary
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Reduced matrix over `keep` (kept registers stay in layout order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                            std::span<const std::string> keep);

/// Reduced density matrix of the pure state `psi` over `keep`, without forming
/// the full projector.
ComplexMatrix reduced_density(const ComplexVector& psi, const RegisterLayout& layout,
                              std::span<const std::string> keep);

/// Reorders tensor factors: `order` lists every label of `layout` exactly once
/// and gives the factor order of the returned matrix.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const RegisterLayout& layout,
                                 std::span<const std::string> order);
ComplexVector permute_subsystems(const ComplexVector& v, const RegisterLayout& layout,
                                 std::span<const std::string> order);

/// Zeroes every entry whose basis indices differ on the given registers
/// (a complete standard-basis measurement of those registers, outcome discarded).
ComplexMatrix dephase(const ComplexMatrix& m, const RegisterLayout& layout,
                      std::span<const std::string> labels);

/// Eigendecomposition of (m + m†)/2. Throws std::invalid_argument when m is not
/// square or deviates from Hermitian by more than `tolerance` in any entry.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tolerance = 1e-9);

double max_abs_entry(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance);
bool all_finite(const ComplexMatrix& m);

}  // namespace qround
