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

#include "qround/quantum_info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qround {

namespace {

std::vector<std::string> to_vector(std::span<const std::string> s) {
  return {s.begin(), s.end()};
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* where) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

void require_disjoint(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty cut");
  std::set<std::string> sa(a.begin(), a.end());
  for (const auto& label : b)
    if (sa.count(label)) throw std::invalid_argument("cuts overlap on '" + label + "'");
}

std::vector<std::string> join(std::span<const std::string> a, std::span<const std::string> b) {
  auto out = to_vector(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// -sum p log2 p over already-validated, clipped values.
double entropy_of(const RealVector& values) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double p = values(i);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix matrix, RegisterLayout layout)
    : layout_(std::move(layout)) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("density matrix not square");
  if (static_cast<std::size_t>(matrix.rows()) != layout_.total_dim())
    throw std::invalid_argument("density matrix dimension does not match layout");
  if (!all_finite(matrix)) throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(matrix, tol::kAlgebraic))
    throw std::invalid_argument("density matrix is not Hermitian");
  matrix_ = (matrix + matrix.adjoint()) / 2.0;
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol::kAlgebraic)
    throw std::invalid_argument("density matrix trace " + std::to_string(trace) + " != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().size() > 0 && solver.eigenvalues().minCoeff() < -tol::kAlgebraic)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : DensityMatrix(matrix, RegisterLayout::single("S", static_cast<std::size_t>(matrix.rows()))) {}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, RegisterLayout layout) {
  return PureState(psi, std::move(layout)).projector();
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  ComplexMatrix m = ComplexMatrix::Zero(probabilities.size(), probabilities.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) m(i, i) = probabilities[i];
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::reduce(std::span<const std::string> keep) const {
  return DensityMatrix(partial_trace(matrix_, layout_, keep), layout_.restrict_to(keep));
}

DensityMatrix DensityMatrix::with_layout(RegisterLayout layout) const {
  return DensityMatrix(matrix_, std::move(layout));
}

RealVector DensityMatrix::spectrum() const {
  RealVector ev = hermitian_eig(matrix_).eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < tol::kSupport) ev(i) = 0.0;
  return ev;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor_product(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

// --- PureState --------------------------------------------------------------

PureState::PureState(ComplexVector amplitudes, RegisterLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim())
    throw std::invalid_argument("pure state dimension does not match layout");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kAlgebraic)
    throw std::invalid_argument("pure state is not normalized");
}

DensityMatrix PureState::projector() const {
  return DensityMatrix(amplitudes_ * amplitudes_.adjoint(), layout_);
}

DensityMatrix PureState::reduce(std::span<const std::string> keep) const {
  return DensityMatrix(reduced_density(amplitudes_, layout_, keep), layout_.restrict_to(keep));
}

// --- CqState ----------------------------------------------------------------

CqState::CqState(std::string classical_label, std::vector<Block> blocks)
    : label_(std::move(classical_label)), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("cq-state needs at least one block");
  double total = 0.0;
  for (const auto& b : blocks_) {
    if (b.probability < 0.0) throw std::invalid_argument("negative block probability");
    if (b.state.layout() != blocks_.front().state.layout())
      throw std::invalid_argument("cq-state blocks must share one layout");
    total += b.probability;
  }
  if (std::abs(total - 1.0) > tol::kAlgebraic)
    throw std::invalid_argument("cq-state probabilities do not sum to 1");
  if (blocks_.front().state.layout().contains(label_))
    throw std::invalid_argument("classical label collides with a quantum register");
}

DensityMatrix CqState::assemble() const {
  const auto m = static_cast<Eigen::Index>(blocks_.size());
  const auto d = static_cast<Eigen::Index>(blocks_.front().state.dim());
  ComplexMatrix out = ComplexMatrix::Zero(m * d, m * d);
  for (Eigen::Index a = 0; a < m; ++a)
    out.block(a * d, a * d, d, d) = blocks_[a].probability * blocks_[a].state.matrix();
  auto layout = RegisterLayout::single(label_, blocks_.size()).concat(blocks_.front().state.layout());
  return DensityMatrix(out, std::move(layout));
}

DensityMatrix CqState::quantum_marginal() const {
  ComplexMatrix acc = ComplexMatrix::Zero(blocks_.front().state.dim(), blocks_.front().state.dim());
  for (const auto& b : blocks_) acc += b.probability * b.state.matrix();
  return DensityMatrix(acc, blocks_.front().state.layout());
}

DensityMatrix condition_on_classical(const CqState& state, std::size_t value) {
  if (value >= state.blocks().size()) throw std::invalid_argument("classical value out of range");
  const auto& block = state.blocks()[value];
  if (block.probability <= 0.0)
    throw std::invalid_argument("cannot condition on a zero-probability value");
  return block.state;
}

// --- Superoperator ----------------------------------------------------------

Superoperator::Superoperator(std::size_t input_dim, std::size_t output_dim, std::size_t env_dim,
                             ComplexMatrix isometry)
    : input_dim_(input_dim), output_dim_(output_dim), env_dim_(env_dim),
      isometry_(std::move(isometry)) {
  if (static_cast<std::size_t>(isometry_.cols()) != input_dim_ ||
      static_cast<std::size_t>(isometry_.rows()) != output_dim_ * env_dim_)
    throw std::invalid_argument("isometry shape does not match channel dimensions");
  const ComplexMatrix gram = isometry_.adjoint() * isometry_;
  if (max_abs_entry(gram - ComplexMatrix::Identity(input_dim_, input_dim_)) > tol::kAlgebraic)
    throw std::invalid_argument("isometry columns are not orthonormal");
}

Superoperator Superoperator::identity(std::size_t dim) {
  return Superoperator(dim, dim, 1, ComplexMatrix::Identity(dim, dim));
}

Superoperator Superoperator::unitary(const ComplexMatrix& u) {
  return Superoperator(u.cols(), u.rows(), 1, u);
}

Superoperator Superoperator::trace_out(std::size_t dim) {
  return Superoperator(dim, 1, dim, ComplexMatrix::Identity(dim, dim));
}

Superoperator Superoperator::from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("no Kraus operators");
  const auto dout = kraus.front().rows();
  const auto din = kraus.front().cols();
  const auto denv = static_cast<Eigen::Index>(kraus.size());
  ComplexMatrix v(dout * denv, din);
  for (Eigen::Index e = 0; e < denv; ++e) {
    if (kraus[e].rows() != dout || kraus[e].cols() != din)
      throw std::invalid_argument("Kraus operators must share one shape");
    for (Eigen::Index o = 0; o < dout; ++o) v.row(o * denv + e) = kraus[e].row(o);
  }
  return Superoperator(din, dout, denv, v);
}

std::vector<ComplexMatrix> Superoperator::kraus_operators() const {
  std::vector<ComplexMatrix> out;
  const auto denv = static_cast<Eigen::Index>(env_dim_);
  for (Eigen::Index e = 0; e < denv; ++e) {
    ComplexMatrix k(output_dim_, input_dim_);
    for (Eigen::Index o = 0; o < static_cast<Eigen::Index>(output_dim_); ++o)
      k.row(o) = isometry_.row(o * denv + e);
    out.push_back(std::move(k));
  }
  return out;
}

Superoperator Superoperator::local(const Superoperator& channel, std::size_t dim_before,
                                   std::size_t dim_after) {
  const ComplexMatrix before = ComplexMatrix::Identity(dim_before, dim_before);
  const ComplexMatrix after = ComplexMatrix::Identity(dim_after, dim_after);
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : channel.kraus_operators())
    kraus.push_back(tensor_product(tensor_product(before, k), after));
  return from_kraus(kraus);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != input_dim_ || m.rows() != m.cols())
    throw std::invalid_argument("superoperator input dimension mismatch");
  const ComplexMatrix dilated = isometry_ * m * isometry_.adjoint();
  const auto layout = RegisterLayout({{"out", output_dim_}, {"env", env_dim_}});
  const std::string keep[] = {"out"};
  return partial_trace(dilated, layout, keep);
}

DensityMatrix apply_superoperator(const Superoperator& f, const DensityMatrix& rho) {
  if (rho.dim() != f.input_dim()) throw std::invalid_argument("superoperator input dimension mismatch");
  return DensityMatrix(f.apply(rho.matrix()), RegisterLayout::single("S", f.output_dim()));
}

// --- measures ---------------------------------------------------------------

double classical_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument("probability entries must be nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > tol::kAlgebraic)
    throw std::invalid_argument("probabilities do not sum to 1");
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of(rho.spectrum()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_entropy");
  const auto sig = hermitian_eig(sigma.matrix());
  double cross = 0.0;
  for (Eigen::Index j = 0; j < sig.eigenvalues.size(); ++j) {
    const auto w = sig.eigenvectors.col(j);
    const double weight = (w.adjoint() * rho.matrix() * w)(0, 0).real();
    const double mu = sig.eigenvalues(j);
    if (mu < tol::kSupport) {
      if (weight > tol::kAlgebraic) return kInfinity;
      continue;
    }
    cross += weight * std::log2(mu);
  }
  return -entropy_of(rho.spectrum()) - cross;
}

double mutual_information(const DensityMatrix& rho, std::span<const std::string> cut_a,
                          std::span<const std::string> cut_b) {
  require_disjoint(cut_a, cut_b);
  const auto ab = join(cut_a, cut_b);
  return von_neumann_entropy(rho.reduce(cut_a)) + von_neumann_entropy(rho.reduce(cut_b)) -
         von_neumann_entropy(rho.reduce(ab));
}

double conditional_mutual_information(const DensityMatrix& rho, std::span<const std::string> x,
                                      std::span<const std::string> y,
                                      std::span<const std::string> z) {
  require_disjoint(x, y);
  const auto xy = join(x, y);
  const auto s = [&](const std::vector<std::string>& labels) {
    return labels.empty() ? 0.0 : von_neumann_entropy(rho.reduce(labels));
  };
  const auto zs = to_vector(z);
  std::set<std::string> seen(xy.begin(), xy.end());
  for (const auto& label : zs)
    if (seen.count(label)) throw std::invalid_argument("conditioning register overlaps a cut");
  return s(join(x, z)) + s(join(y, z)) - s(zs) - s(join(xy, zs));
}

double trace_norm(const ComplexMatrix& m) {
  return hermitian_eig(m).eigenvalues.cwiseAbs().sum();
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution lengths differ");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d;
}

double informational_distance(const DensityMatrix& rho, std::span<const std::string> cut_a,
                              std::span<const std::string> cut_b) {
  require_disjoint(cut_a, cut_b);
  const auto ab_labels = join(cut_a, cut_b);
  const DensityMatrix joint = rho.reduce(ab_labels);
  const DensityMatrix rho_a = rho.reduce(cut_a);
  const DensityMatrix rho_b = rho.reduce(cut_b);
  const auto product_layout = rho_a.layout().concat(rho_b.layout());
  const auto order = joint.layout().labels();
  const ComplexMatrix product =
      permute_subsystems(tensor_product(rho_a.matrix(), rho_b.matrix()), product_layout, order);
  return trace_norm(joint.matrix() - product);
}

// --- constructions ----------------------------------------------------------

PureState purify(const DensityMatrix& rho, const std::string& purifier_label) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  const auto eig = hermitian_eig(rho.matrix());
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = std::max(0.0, eig.eigenvalues(i));
    if (lambda < tol::kSupport) continue;
    ComplexVector basis = ComplexVector::Zero(d);
    basis(i) = 1.0;
    psi += std::sqrt(lambda) * tensor_product(ComplexVector(eig.eigenvectors.col(i)), basis);
  }
  psi /= psi.norm();
  return PureState(psi, rho.layout().concat(RegisterLayout::single(purifier_label, d)));
}

std::vector<double> two_outcome_distribution(const ComplexMatrix& projector,
                                             const DensityMatrix& rho) {
  const double p = (projector * rho.matrix()).trace().real();
  return {p, 1.0 - p};
}

DistinguishingMeasurement optimal_distinguishing_measurement(const DensityMatrix& rho,
                                                             const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "optimal_distinguishing_measurement");
  const auto eig = hermitian_eig(rho.matrix() - sigma.matrix());
  const auto d = static_cast<Eigen::Index>(rho.dim());
  DistinguishingMeasurement out;
  out.accept = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (eig.eigenvalues(i) >= 0.0) out.accept += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
  out.reject = ComplexMatrix::Identity(d, d) - out.accept;
  out.distance = total_variation(two_outcome_distribution(out.accept, rho),
                                 two_outcome_distribution(out.accept, sigma));
  return out;
}

LocalTransition local_transition(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                 const PureState& phi1, const PureState& phi2) {
  require_same_dim(rho1, rho2, "local_transition");
  if (rho1.layout() != rho2.layout() || phi1.layout() != phi2.layout())
    throw std::invalid_argument("local_transition: layouts of the two inputs differ");
  const auto& layout = phi1.layout();
  const auto system = rho1.layout().labels();
  std::vector<std::string> purifier;
  for (const auto& label : layout.labels())
    if (std::find(system.begin(), system.end(), label) == system.end()) purifier.push_back(label);
  const std::size_t dim_h = rho1.dim();
  const std::size_t dim_k = layout.total_dim() / std::max<std::size_t>(1, layout.restrict_to(system).total_dim());
  if (layout.restrict_to(system).total_dim() != dim_h)
    throw std::invalid_argument("local_transition: purification does not contain the system registers");
  if (dim_k < dim_h) throw std::invalid_argument("local_transition: purifying space too small");

  const double mismatch1 = trace_norm(phi1.reduce(system).matrix() - rho1.matrix());
  const double mismatch2 = trace_norm(phi2.reduce(system).matrix() - rho2.matrix());
  if (mismatch1 > tol::kEntropy || mismatch2 > tol::kEntropy)
    throw std::invalid_argument("local_transition: input is not a purification of the claimed state");

  // Reshape both purifications to dim_h x dim_k amplitude matrices in (H, K) order.
  auto order = system;
  order.insert(order.end(), purifier.begin(), purifier.end());
  auto as_matrix = [&](const PureState& phi) {
    const ComplexVector v = permute_subsystems(phi.amplitudes(), layout, order);
    ComplexMatrix m(dim_h, dim_k);
    for (std::size_t h = 0; h < dim_h; ++h)
      for (std::size_t k = 0; k < dim_k; ++k) m(h, k) = v(h * dim_k + k);
    return m;
  };
  const ComplexMatrix a1 = as_matrix(phi1);
  const ComplexMatrix a2 = as_matrix(phi2);

  // <phi1|(I⊗U)|phi2> = Tr(U M) with M = a2^T conj(a1); maximized in modulus by
  // U = Z W† for the SVD M = W S Z†.
  const ComplexMatrix cross = a2.transpose() * a1.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  LocalTransition out;
  out.unitary = svd.matrixV() * svd.matrixU().adjoint();

  const ComplexMatrix rotated = a2 * out.unitary.transpose();
  ComplexVector v1(dim_h * dim_k), v2(dim_h * dim_k);
  for (std::size_t h = 0; h < dim_h; ++h)
    for (std::size_t k = 0; k < dim_k; ++k) {
      v1(h * dim_k + k) = a1(h, k);
      v2(h * dim_k + k) = rotated(h, k);
    }
  out.achieved = trace_norm(v1 * v1.adjoint() - v2 * v2.adjoint());
  return out;
}

double pinsker_gap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "pinsker_gap");
  const double s = relative_entropy(rho, sigma);
  if (std::isinf(s)) return kInfinity;
  const double d = trace_norm(rho.matrix() - sigma.matrix());
  return s - d * d / (2.0 * std::log(2.0));
}

CollapsedPair collapse_to_2x2(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "collapse_to_2x2");
  const auto eig = hermitian_eig(rho.matrix() - sigma.matrix());
  const auto n = static_cast<Eigen::Index>(rho.dim());
  Eigen::Index nonneg = 0;
  while (nonneg < n && eig.eigenvalues(nonneg) >= 0.0) ++nonneg;
  const Eigen::Index inner = std::max(nonneg, n - nonneg);
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix r = v.adjoint() * rho.matrix() * v;
  const ComplexMatrix s = v.adjoint() * sigma.matrix() * v;

  // Eigenvector i sits at (block 0, i) if nonnegative, else (block 1, i - nonneg).
  auto index_of = [&](int block, Eigen::Index j) -> Eigen::Index {
    if (block == 0) return j < nonneg ? j : -1;
    return j < n - nonneg ? nonneg + j : -1;
  };
  auto collapse = [&](const ComplexMatrix& m) {
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (Eigen::Index j = 0; j < inner; ++j) {
          const auto row = index_of(b, j);
          const auto col = index_of(c, j);
          if (row >= 0 && col >= 0) out(b, c) += m(row, col);
        }
    return out;
  };
  return {DensityMatrix(collapse(r)), DensityMatrix(collapse(s))};
}

}  // namespace qround
