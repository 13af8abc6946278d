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

#include <doctest.h>

#include <string>
#include <vector>

#include "qround/matrix.hpp"
#include "qround/quantum_info.hpp"

using namespace qround;

namespace {

ComplexMatrix basis_op(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("layout positions and dimensions") {
  RegisterLayout layout({{"A", 2}, {"B", 3}, {"C", 4}});
  CHECK(layout.total_dim() == 24);
  CHECK(layout.position("B") == 1);
  CHECK(layout.dim_of("C") == 4);
  CHECK_THROWS_AS(layout.position("Z"), std::invalid_argument);
  CHECK_THROWS_AS(RegisterLayout({{"A", 2}, {"A", 2}}), std::invalid_argument);

  const std::vector<std::string> keep{"C", "A"};
  const auto sub = layout.restrict_to(keep);
  CHECK(sub.labels() == std::vector<std::string>{"A", "C"});
  CHECK(RegisterLayout::qubits("q", 3).labels() == std::vector<std::string>{"q0", "q1", "q2"});
}

TEST_CASE("partial trace of a product recovers the factors") {
  Rng rng(11);
  const auto a = random_density(2, rng).matrix();
  const auto b = random_density(3, rng).matrix();
  RegisterLayout layout({{"A", 2}, {"B", 3}});
  const auto ab = tensor_product(a, b);
  const std::vector<std::string> ka{"A"}, kb{"B"};
  CHECK((partial_trace(ab, layout, ka) - a).norm() < 1e-12);
  CHECK((partial_trace(ab, layout, kb) - b).norm() < 1e-12);
}

TEST_CASE("reduced_density agrees with the projector route") {
  Rng rng(5);
  RegisterLayout layout({{"A", 2}, {"B", 3}, {"C", 2}});
  const auto psi = random_pure_vector(12, rng);
  const ComplexMatrix proj = psi * psi.adjoint();
  for (const std::vector<std::string>& keep :
       {std::vector<std::string>{"A"}, {"B", "C"}, {"A", "C"}, {"A", "B", "C"}}) {
    CHECK((reduced_density(psi, layout, keep) - partial_trace(proj, layout, keep)).norm() < 1e-12);
  }
}

TEST_CASE("permute_subsystems swaps tensor factors") {
  Rng rng(3);
  const auto a = random_density(2, rng).matrix();
  const auto b = random_density(3, rng).matrix();
  RegisterLayout layout({{"A", 2}, {"B", 3}});
  const std::vector<std::string> order{"B", "A"};
  CHECK((permute_subsystems(tensor_product(a, b), layout, order) - tensor_product(b, a)).norm() <
        1e-12);

  const auto u = random_pure_vector(2, rng);
  const auto v = random_pure_vector(3, rng);
  CHECK((permute_subsystems(tensor_product(u, v), layout, order) - tensor_product(v, u)).norm() <
        1e-12);
}

TEST_CASE("dephase keeps only entries diagonal on the measured register") {
  RegisterLayout layout({{"A", 2}, {"B", 2}});
  ComplexMatrix m = ComplexMatrix::Constant(4, 4, Complex(1.0, 0.0));
  const std::vector<std::string> labels{"A"};
  const auto d = dephase(m, layout, labels);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(d(i, j)) == ((i / 2 == j / 2) ? 1.0 : 0.0));
}

TEST_CASE("hermitian_eig returns a descending spectrum and rejects non-Hermitian input") {
  ComplexMatrix m = basis_op(3, 0, 0) * 0.2 + basis_op(3, 1, 1) * 0.5 + basis_op(3, 2, 2) * 0.3;
  const auto e = hermitian_eig(m);
  CHECK(e.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(e.eigenvalues(2) == doctest::Approx(0.2));
  CHECK_THROWS_AS(hermitian_eig(basis_op(2, 0, 1)), std::invalid_argument);
  CHECK(is_hermitian(m, 1e-12));
  CHECK(all_finite(m));
}
