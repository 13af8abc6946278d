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

// Entropies, distances, channels and the inequalities that relate them.
// All logarithms are base 2.

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qround/matrix.hpp"

namespace qround {

using Rng = std::mt19937_64;

namespace tol {
inline constexpr double kSupport = 1e-12;    // eigenvalues below are treated as zero
inline constexpr double kAlgebraic = 1e-9;   // identities between matrices
inline constexpr double kEntropy = 1e-7;     // comparisons involving entropies
}  // namespace tol

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Hermitian, PSD, unit-trace matrix over a labeled layout.
class DensityMatrix {
 public:
  /// Validates the density-matrix invariants; throws std::invalid_argument.
  DensityMatrix(ComplexMatrix matrix, RegisterLayout layout);
  /// Single register labeled "S".
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix pure(const ComplexVector& psi, RegisterLayout layout);
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix diagonal(std::span<const double> probabilities);

  const ComplexMatrix& matrix() const { return matrix_; }
  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  DensityMatrix reduce(std::span<const std::string> keep) const;
  DensityMatrix with_layout(RegisterLayout layout) const;
  /// Descending spectrum with values below the support tolerance clipped to 0.
  RealVector spectrum() const;

 private:
  ComplexMatrix matrix_;
  RegisterLayout layout_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Unit vector over a labeled layout.
class PureState {
 public:
  PureState(ComplexVector amplitudes, RegisterLayout layout);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const RegisterLayout& layout() const { return layout_; }
  DensityMatrix projector() const;
  DensityMatrix reduce(std::span<const std::string> keep) const;

 private:
  ComplexVector amplitudes_;
  RegisterLayout layout_;
};

/// Classical-quantum state: a classical register with one conditional state per value.
class CqState {
 public:
  struct Block {
    double probability = 0.0;
    DensityMatrix state;
  };

  CqState(std::string classical_label, std::vector<Block> blocks);

  const std::string& classical_label() const { return label_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Block-diagonal density matrix over (classical, quantum...).
  DensityMatrix assemble() const;
  /// Average of the conditional states.
  DensityMatrix quantum_marginal() const;

 private:
  std::string label_;
  std::vector<Block> blocks_;
};

/// CPTP map in Stinespring form: rho -> tr_env(V rho V†), with V an isometry
/// from `input_dim` into output ⊗ environment (output factor first).
class Superoperator {
 public:
  Superoperator(std::size_t input_dim, std::size_t output_dim, std::size_t env_dim,
                ComplexMatrix isometry);

  static Superoperator identity(std::size_t dim);
  static Superoperator unitary(const ComplexMatrix& u);
  /// Discards the whole input; output is the 1x1 state 1.
  static Superoperator trace_out(std::size_t dim);
  /// Builds the isometry from Kraus operators (all output_dim x input_dim).
  static Superoperator from_kraus(const std::vector<ComplexMatrix>& kraus);
  /// I_before ⊗ channel ⊗ I_after.
  static Superoperator local(const Superoperator& channel, std::size_t dim_before,
                             std::size_t dim_after);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  std::size_t env_dim() const { return env_dim_; }
  const ComplexMatrix& isometry() const { return isometry_; }
  std::vector<ComplexMatrix> kraus_operators() const;

  /// Applies the linear map to any square matrix (used for Hermitian differences).
  ComplexMatrix apply(const ComplexMatrix& m) const;

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::size_t env_dim_;
  ComplexMatrix isometry_;
};

DensityMatrix apply_superoperator(const Superoperator& f, const DensityMatrix& rho);

// --- measures -------------------------------------------------------------

double classical_entropy(std::span<const double> p);
double von_neumann_entropy(const DensityMatrix& rho);
/// S(rho||sigma) in bits; kInfinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double mutual_information(const DensityMatrix& rho, std::span<const std::string> cut_a,
                          std::span<const std::string> cut_b);
double conditional_mutual_information(const DensityMatrix& rho, std::span<const std::string> x,
                                      std::span<const std::string> y,
                                      std::span<const std::string> z);
/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);
/// Sum (not half-sum) of absolute differences.
double total_variation(std::span<const double> p, std::span<const double> q);
/// ||rho_AB - rho_A ⊗ rho_B||_1 for disjoint cuts; registers outside both
/// cuts are traced out first.
double informational_distance(const DensityMatrix& rho, std::span<const std::string> cut_a,
                              std::span<const std::string> cut_b);

// --- constructions ----------------------------------------------------------

/// Canonical purification sum_i sqrt(lambda_i) |v_i>|i> with the purifying
/// register appended under `purifier_label`.
PureState purify(const DensityMatrix& rho, const std::string& purifier_label = "K");

struct DistinguishingMeasurement {
  ComplexMatrix accept;  // projector onto the nonnegative eigenspace of rho - sigma
  ComplexMatrix reject;  // I - accept
  double distance = 0.0; // total variation of the induced outcome distributions
};

DistinguishingMeasurement optimal_distinguishing_measurement(const DensityMatrix& rho,
                                                             const DensityMatrix& sigma);

/// Outcome distribution (Tr(P rho), Tr((I-P) rho)) of a two-outcome projective measurement.
std::vector<double> two_outcome_distribution(const ComplexMatrix& projector,
                                             const DensityMatrix& rho);

struct LocalTransition {
  ComplexMatrix unitary;  // acts on the purifying registers only
  double achieved = 0.0;  // || |phi1><phi1| - (I⊗U)|phi2><phi2|(I⊗U)† ||_1
};

/// Purifications phi1, phi2 live on the registers of rho1 plus purifying
/// registers (the remaining labels, whose total dimension must be >= dim rho1).
LocalTransition local_transition(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                 const PureState& phi1, const PureState& phi2);

/// S(rho||sigma) - ||rho - sigma||_1^2 / (2 ln 2); kInfinity propagates.
double pinsker_gap(const DensityMatrix& rho, const DensityMatrix& sigma);

struct CollapsedPair {
  DensityMatrix rho;
  DensityMatrix sigma;
};

/// Rotates into the eigenbasis of rho - sigma, splits into the nonnegative and
/// negative eigenspaces (zero-padded to equal size) and traces out the inner
/// factor, leaving 2x2 states.
CollapsedPair collapse_to_2x2(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix condition_on_classical(const CqState& state, std::size_t value);

// --- random generators ------------------------------------------------------

ComplexVector random_pure_vector(std::size_t dim, Rng& rng);
/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// rows x cols isometry (rows >= cols) with Haar-distributed columns.
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);
/// Reduction of a Haar pure state on dim x dim.
DensityMatrix random_density(std::size_t dim, Rng& rng);
/// Reduction of a Haar pure state on dim x env_dim (rank <= env_dim).
DensityMatrix random_density(std::size_t dim, std::size_t env_dim, Rng& rng);
Superoperator random_cptp(std::size_t input_dim, std::size_t output_dim, std::size_t env_dim,
                          Rng& rng);
/// Entries i.i.d. complex Gaussian, symmetrized.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
std::vector<double> random_distribution(std::size_t size, Rng& rng);

}  // namespace qround
