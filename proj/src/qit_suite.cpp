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

// verify-qit: randomized property checks of the quantum information toolkit.
// Each row reports the smallest margin rhs - lhs seen for one inequality at
// one dimension; equalities use -|lhs - rhs|.

#include <cmath>
#include <functional>

#include "qround/protocols.hpp"
#include "qround/quantum_info.hpp"
#include "report_util.hpp"

namespace qround::exp {

namespace {

using detail::MarginTracker;

RegisterLayout pair_layout(std::size_t da, std::size_t db) { return RegisterLayout({{"A", da}, {"B", db}}); }

const std::string kA[] = {"A"};
const std::string kB[] = {"B"};
const std::string kC[] = {"C"};
const std::string kAB[] = {"A", "B"};

DensityMatrix random_pair_state(std::size_t da, std::size_t db, Rng& rng) {
  return random_density(da * db, rng).with_layout(pair_layout(da, db));
}

ComplexMatrix random_projector(std::size_t dim, Rng& rng) {
  const ComplexMatrix u = random_unitary(dim, rng);
  ComplexMatrix d = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < dim; ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = coin(rng) ? 1.0 : 0.0;
  return u * d * u.adjoint();
}

// Density matrix supported on the range of `projector` (rank >= 1).
DensityMatrix random_on_range(const ComplexMatrix& basis, Rng& rng) {
  const auto r = static_cast<std::size_t>(basis.cols());
  const DensityMatrix small = random_density(r, rng);
  return DensityMatrix(basis * small.matrix() * basis.adjoint());
}

struct Check {
  std::string name;
  double tolerance;
  // Adds the margins of one random trial at dimension d.
  std::function<void(std::size_t d, Rng& rng, MarginTracker& m)> trial;
};

std::vector<Check> checks() {
  std::vector<Check> out;
  out.push_back({"pinsker", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto sigma = random_density(d, rng);
                   // Every other trial uses a rank-deficient rho.
                   const auto rho = m.samples % 2 == 0 ? random_density(d, rng)
                                                         : random_density(d, std::max<std::size_t>(1, d / 2), rng);
                   const double gap = pinsker_gap(rho, sigma);
                   m.add(std::isinf(gap) ? 0.0 : gap);
                 }});
  out.push_back({"pinsker_classical", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto p = random_distribution(d, rng);
                   const auto q = random_distribution(d, rng);
                   const double gap = pinsker_gap(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q));
                   m.add(std::isinf(gap) ? 0.0 : gap);
                 }});
  out.push_back({"collapse_trace_norm", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_density(d, rng);
                   const auto sigma = random_density(d, rng);
                   const auto c = collapse_to_2x2(rho, sigma);
                   m.add(-std::abs(trace_norm(c.rho.matrix() - c.sigma.matrix()) -
                                   trace_norm(rho.matrix() - sigma.matrix())));
                 }});
  out.push_back({"collapse_relative_entropy", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_density(d, rng);
                   const auto sigma = random_density(d, rng);
                   const auto c = collapse_to_2x2(rho, sigma);
                   m.add(relative_entropy(rho, sigma) - relative_entropy(c.rho, c.sigma));
                 }});
  out.push_back({"helstrom_exact", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_density(d, rng);
                   const auto sigma = random_density(d, rng);
                   const auto meas = optimal_distinguishing_measurement(rho, sigma);
                   m.add(-std::abs(meas.distance - trace_norm(rho.matrix() - sigma.matrix())));
                 }});
  out.push_back({"helstrom_competing", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_density(d, rng);
                   const auto sigma = random_density(d, rng);
                   const auto best = optimal_distinguishing_measurement(rho, sigma).distance;
                   const auto p = random_projector(d, rng);
                   const auto a = two_outcome_distribution(p, rho);
                   const auto b = two_outcome_distribution(p, sigma);
                   m.add(best - total_variation(a, b));
                 }});
  out.push_back({"cptp_relative_entropy", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_density(d, rng);
                   const auto sigma = random_density(d, rng);
                   const auto f = random_cptp(d, d, 2, rng);
                   const double after = relative_entropy(apply_superoperator(f, rho), apply_superoperator(f, sigma));
                   m.add(relative_entropy(rho, sigma) - after);
                 }});
  out.push_back({"cptp_trace_norm", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const ComplexMatrix h = random_hermitian(d, rng);
                   const auto f = random_cptp(d, d, 2, rng);
                   m.add(trace_norm(h) - trace_norm(f.apply(h)));
                 }});
  out.push_back({"araki_lieb", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_pair_state(d, 2, rng);
                   const double sx = von_neumann_entropy(rho.reduce(kA));
                   const double sy = von_neumann_entropy(rho.reduce(kB));
                   const double sxy = von_neumann_entropy(rho);
                   m.add(sx + sy - sxy);
                   m.add(sxy - std::abs(sx - sy));
                   m.add(2.0 * std::min(sx, sy) - mutual_information(rho, kA, kB));
                 }});
  out.push_back({"distance_symmetry", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_pair_state(d, 2, rng);
                   m.add(-std::abs(informational_distance(rho, kA, kB) - informational_distance(rho, kB, kA)));
                 }});
  out.push_back({"distance_monotone", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho =
                       random_density(d * 4, rng).with_layout(RegisterLayout({{"A", d}, {"B", 2}, {"C", 2}}));
                   m.add(informational_distance(rho, kAB, kC) - informational_distance(rho, kA, kC));
                 }});
  out.push_back({"distance_range", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_pair_state(d, 2, rng);
                   const double dist = informational_distance(rho, kA, kB);
                   m.add(std::min(dist, 2.0 - dist));
                 }});
  out.push_back({"distance_channel", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto layout = pair_layout(d, 2);
                   const auto rho = random_pair_state(d, 2, rng);
                   const double before = informational_distance(rho, kA, kB);
                   const auto fa = Superoperator::local(random_cptp(d, d, 2, rng), 1, 2);
                   const auto fb = Superoperator::local(random_cptp(2, 2, 2, rng), d, 1);
                   m.add(before - informational_distance(apply_superoperator(fa, rho).with_layout(layout), kA, kB));
                   m.add(before - informational_distance(apply_superoperator(fb, rho).with_layout(layout), kA, kB));
                 }});
  out.push_back({"distance_vs_information", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_pair_state(d, 2, rng);
                   const double info = std::max(0.0, mutual_information(rho, kA, kB));
                   m.add(std::sqrt(2.0 * info) - informational_distance(rho, kA, kB));
                 }});
  out.push_back({"cq_average_distance", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto p = random_distribution(d, rng);
                   std::vector<CqState::Block> blocks;
                   for (std::size_t a = 0; a < d; ++a)
                     blocks.push_back({p[a], random_density(2, rng).with_layout(RegisterLayout::single("B", 2))});
                   const CqState cq("X", blocks);
                   const auto marginal = cq.quantum_marginal();
                   double avg = 0.0;
                   for (std::size_t a = 0; a < d; ++a)
                     avg += p[a] * trace_norm(condition_on_classical(cq, a).matrix() - marginal.matrix());
                   const std::string x[] = {"X"};
                   m.add(-std::abs(avg - informational_distance(cq.assemble(), x, kB)));
                 }});
  out.push_back({"cq_predictor", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const double eps_grid[] = {0.0, 0.1, 0.25};
                   const double eps = eps_grid[m.samples % 3];
                   const std::size_t dim = std::max<std::size_t>(2, d);
                   const ComplexMatrix u = random_unitary(dim, rng);
                   const auto r0 = static_cast<Eigen::Index>(dim / 2);
                   const ComplexMatrix b0 = u.leftCols(r0);
                   const ComplexMatrix b1 = u.rightCols(static_cast<Eigen::Index>(dim) - r0);
                   const auto t0 = random_on_range(b0, rng);
                   const auto t1 = random_on_range(b1, rng);
                   const auto lay = RegisterLayout::single("A", dim);
                   std::vector<CqState::Block> blocks = {
                       {0.5, DensityMatrix((1 - eps) * t0.matrix() + eps * t1.matrix(), lay)},
                       {0.5, DensityMatrix(eps * t0.matrix() + (1 - eps) * t1.matrix(), lay)}};
                   const CqState cq("B", blocks);
                   m.add(informational_distance(cq.assemble(), kA, kB) - (1.0 - 2.0 * eps));
                 }});
  out.push_back({"local_transition", tol::kEntropy, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho1 = random_density(d, rng);
                   const auto rho2 = random_density(d, rng);
                   const auto phi1 = purify(rho1);
                   const auto raw = purify(rho2);
                   // Scramble the purifying register so the transition is not trivial.
                   const auto scramble =
                       tensor_product(ComplexMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                                            static_cast<Eigen::Index>(d))),
                                      random_unitary(d, rng));
                   const PureState phi2(scramble * raw.amplitudes(), raw.layout());
                   const auto lt = local_transition(rho1, rho2, phi1, phi2);
                   m.add(2.0 * std::sqrt(trace_norm(rho1.matrix() - rho2.matrix())) - lt.achieved);
                 }});
  out.push_back({"local_transition_equal", tol::kAlgebraic, [](std::size_t d, Rng& rng, MarginTracker& m) {
                   const auto rho = random_density(d, rng);
                   const auto phi1 = purify(rho);
                   const auto scramble =
                       tensor_product(ComplexMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                                            static_cast<Eigen::Index>(d))),
                                      random_unitary(d, rng));
                   const PureState phi2(scramble * phi1.amplitudes(), phi1.layout());
                   m.add(-local_transition(rho, rho, phi1, phi2).achieved);
                 }});
  return out;
}

}  // namespace

Report cmd_verify_qit(const ExperimentConfig& config) {
  const auto dims = detail::or_default(config.dims, {2, 3, 4, 8});
  for (auto d : dims)
    if (d < 2 || d > 16) throw ConfigError("dims must lie in [2, 16]");
  const std::size_t trials = detail::trials_or(config, 200);
  Report r = detail::start_report("verify-qit", config,
                                  {"check", "dim", "trials", "tolerance", "min_margin", "violations", "pass"});
  const auto all = checks();
  for (std::size_t c = 0; c < all.size(); ++c)
    for (std::size_t di = 0; di < dims.size(); ++di) {
      Rng rng(cc::derive_seed(r.seed, c * 64 + di));
      MarginTracker m(all[c].tolerance);
      for (std::size_t t = 0; t < trials; ++t) all[c].trial(dims[di], rng, m);
      detail::add_row(r, {all[c].name, dims[di], trials, all[c].tolerance, m.min_margin, m.violations, m.ok()});
      if (!m.ok()) r.exit_code = kExitViolation;
    }
  return r;
}

}  // namespace qround::exp
