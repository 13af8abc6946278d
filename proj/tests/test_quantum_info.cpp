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

#include <cmath>
#include <string>
#include <vector>

#include "qround/quantum_info.hpp"

using namespace qround;

namespace {

// Independent closed forms for diagonal states.
double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

ComplexVector bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

RegisterLayout ab() { return RegisterLayout({{"A", 2}, {"B", 2}}); }

const std::vector<std::string> kA{"A"};
const std::vector<std::string> kB{"B"};

}  // namespace

TEST_CASE("entropies of diagonal states") {
  const std::vector<double> p{0.75, 0.25};
  CHECK(classical_entropy(p) == doctest::Approx(0.8112781245).epsilon(1e-9));
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(p)) == doctest::Approx(h2(0.75)).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(8)) == doctest::Approx(3.0));
  CHECK(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(0.1887218755).epsilon(1e-9));
}

TEST_CASE("relative entropy is infinite off support") {
  const std::vector<double> p{1.0, 0.0}, q{0.5, 0.5};
  CHECK(relative_entropy(DensityMatrix::diagonal(q), DensityMatrix::diagonal(p)) == kInfinity);
  CHECK(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)) ==
        doctest::Approx(1.0));
  CHECK(pinsker_gap(DensityMatrix::diagonal(q), DensityMatrix::diagonal(p)) == kInfinity);
}

TEST_CASE("pinsker gap of a biased coin against a fair one") {
  const std::vector<double> p{0.75, 0.25};
  // 1 - h2(3/4) - 0.5^2 / (2 ln 2)
  CHECK(pinsker_gap(DensityMatrix::diagonal(p), DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(0.008384880).epsilon(1e-6));
}

TEST_CASE("trace norm and total variation") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -0.25;
  CHECK(trace_norm(m) == doctest::Approx(0.75));
  const std::vector<double> p{0.2, 0.8}, q{0.5, 0.5};
  CHECK(total_variation(p, q) == doctest::Approx(0.6));
}

TEST_CASE("informational distance of correlated qubit pairs") {
  const auto phi = DensityMatrix::pure(bell(), ab());
  CHECK(informational_distance(phi, kA, kB) == doctest::Approx(1.5));
  CHECK(mutual_information(phi, kA, kB) == doctest::Approx(2.0));

  const std::vector<double> corr{0.5, 0.0, 0.0, 0.5};
  const auto c = DensityMatrix::diagonal(corr).with_layout(ab());
  CHECK(informational_distance(c, kA, kB) == doctest::Approx(1.0));
  CHECK(mutual_information(c, kA, kB) == doctest::Approx(1.0));

  Rng rng(2);
  const auto prod = tensor_product(random_density(2, rng).with_layout(RegisterLayout::single("A", 2)),
                                   random_density(2, rng).with_layout(RegisterLayout::single("B", 2)));
  CHECK(informational_distance(prod, kA, kB) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(informational_distance(phi, kA, kA), std::invalid_argument);
}

TEST_CASE("conditional mutual information of a classical copy") {
  // X = Y uniform, Z independent: I(X:Y|Z) = 1.
  RegisterLayout xyz({{"X", 2}, {"Y", 2}, {"Z", 2}});
  std::vector<double> p(8, 0.0);
  p[0b000] = p[0b001] = p[0b110] = p[0b111] = 0.25;
  const auto rho = DensityMatrix::diagonal(p).with_layout(xyz);
  const std::vector<std::string> x{"X"}, y{"Y"}, z{"Z"};
  CHECK(conditional_mutual_information(rho, x, y, z) == doctest::Approx(1.0));
}

TEST_CASE("collapse to 2x2 of a pure state against the maximally mixed state") {
  std::vector<double> p{1.0, 0.0, 0.0, 0.0};
  const auto rho = DensityMatrix::diagonal(p);
  const auto sigma = DensityMatrix::maximally_mixed(4);
  const auto c = collapse_to_2x2(rho, sigma);
  CHECK(c.rho.dim() == 2);
  CHECK(trace_norm(c.rho.matrix() - c.sigma.matrix()) == doctest::Approx(1.5));
  CHECK(relative_entropy(c.rho, c.sigma) <= relative_entropy(rho, sigma) + tol::kEntropy);
}

TEST_CASE("optimal distinguishing measurement meets the trace norm") {
  Rng rng(9);
  for (std::size_t d : {2u, 3u, 5u}) {
    const auto rho = random_density(d, rng);
    const auto sigma = random_density(d, rng);
    const auto m = optimal_distinguishing_measurement(rho, sigma);
    CHECK(m.distance == doctest::Approx(trace_norm(rho.matrix() - sigma.matrix())).epsilon(1e-9));
    CHECK((m.accept + m.reject - ComplexMatrix::Identity(d, d)).norm() < 1e-9);
    const auto pr = two_outcome_distribution(m.accept, rho);
    CHECK(pr[0] + pr[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("superoperators preserve trace and compose with identity") {
  Rng rng(4);
  const auto rho = random_density(3, rng);
  const auto f = random_cptp(3, 2, 3, rng);
  const auto out = apply_superoperator(f, rho);
  CHECK(out.dim() == 2);
  CHECK(out.matrix().trace().real() == doctest::Approx(1.0));
  CHECK((apply_superoperator(Superoperator::identity(3), rho).matrix() - rho.matrix()).norm() < 1e-12);
  CHECK(apply_superoperator(Superoperator::trace_out(3), rho).dim() == 1);

  const auto back = Superoperator::from_kraus(f.kraus_operators());
  CHECK((apply_superoperator(back, rho).matrix() - out.matrix()).norm() < 1e-10);
  CHECK(Superoperator::local(f, 2, 1).input_dim() == 6);
}

TEST_CASE("purification reduces back to the state") {
  Rng rng(6);
  const auto rho = random_density(3, 2, rng);
  const auto psi = purify(rho);
  const auto labels = rho.layout().labels();
  CHECK((psi.reduce(labels).matrix() - rho.matrix()).norm() < 1e-10);
}

TEST_CASE("local transition between purifications of one state") {
  Rng rng(8);
  const auto rho = random_density(2, rng);
  const auto phi = purify(rho);
  const ComplexMatrix u = random_unitary(2, rng);
  ComplexMatrix iu = tensor_product(ComplexMatrix(ComplexMatrix::Identity(2, 2)), u);
  const PureState phi2(iu * phi.amplitudes(), phi.layout());
  const auto lt = local_transition(rho, rho, phi, phi2);
  CHECK(lt.achieved == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("cq-state blocks and conditioning") {
  const std::vector<double> p0{1.0, 0.0}, p1{0.0, 1.0};
  CqState cq("X", {{0.25, DensityMatrix::diagonal(p0)}, {0.75, DensityMatrix::diagonal(p1)}});
  CHECK(cq.assemble().dim() == 4);
  CHECK(std::real(cq.quantum_marginal().matrix()(1, 1)) == doctest::Approx(0.75));
  CHECK(std::real(condition_on_classical(cq, 1).matrix()(1, 1)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(CqState("X", {{0.5, DensityMatrix::diagonal(p0)}}), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);
  ComplexMatrix half = ComplexMatrix::Identity(2, 2) * 0.25;
  CHECK_THROWS_AS(DensityMatrix{half}, std::invalid_argument);
}

TEST_CASE("random generators produce valid objects") {
  Rng rng(1);
  const ComplexMatrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);
  const ComplexMatrix w = random_isometry(6, 2, rng);
  CHECK((w.adjoint() * w - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
  const auto r = random_density(4, 1, rng);
  CHECK(von_neumann_entropy(r) == doctest::Approx(0.0).epsilon(1e-9));
  const auto p = random_distribution(5, rng);
  double s = 0;
  for (double x : p) s += x;
  CHECK(s == doctest::Approx(1.0));
}
