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

// Pure-state simulator for small quantum pointer jumping protocols run on the
// uniform superposition over all inputs, together with the per-round
// quantities of the round-elimination argument.
//
// Qubit order in the global state: F_A pointer qubits (vertex-major, most
// significant bit first), then F_B, then the declared work qubits. Qubit 0 is
// the most significant bit of the flat basis index.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qround/matrix.hpp"
#include "qround/pointer_jumping.hpp"

namespace qround::qsim {

using pj::Side;

inline constexpr std::size_t kMaxQubits = 20;
inline constexpr std::size_t kMaxReducedQubits = 10;

struct WorkQubit {
  std::string name;
  Side owner = Side::A;
};

struct Gate {
  std::vector<std::string> qubits;  // qubits[0] is the most significant matrix index bit
  ComplexMatrix matrix;

  /// x, h, cx, cz, swap, ccx.
  static Gate named(const std::string& name, std::vector<std::string> qubits);
  /// Basis permutation: |i> -> |image[i]>.
  static Gate permutation(std::vector<std::string> qubits, const std::vector<std::uint32_t>& image);
  static Gate from_function(std::vector<std::string> qubits,
                            const std::function<std::uint32_t(std::uint32_t)>& f);
  /// |0><0| ⊗ u0 + |1><1| ⊗ u1 with `control` first.
  static Gate controlled_pair(const std::string& control, std::vector<std::string> targets,
                              const ComplexMatrix& u0, const ComplexMatrix& u1);
};

struct RoundSpec {
  std::vector<Gate> gates;
  std::vector<std::string> send;
};

struct QProtocolSpec {
  std::string name;
  std::size_t n = 2;
  std::size_t k = 1;
  Side starter = Side::B;
  std::vector<WorkQubit> work;
  std::vector<RoundSpec> rounds;  // exactly k
  /// Local gates of the announcing player before the output is measured; no sends.
  std::vector<Gate> announce;
  std::string output;  // work qubit read as the f_k answer
};

/// "FA3.1": bit 1 (0 = most significant) of the pointer stored at vertex 3 of V_A.
std::string input_qubit(Side side, std::uint32_t vertex, unsigned bit);
std::vector<std::string> pointer_qubits(Side side, std::uint32_t vertex, std::size_t n);
std::vector<std::string> input_register(Side side, std::size_t n);
/// Speaker of 1-based step t.
Side speaker(Side starter, std::size_t t);

struct BranchState {
  std::vector<std::uint32_t> path;  // measured vertex indices v1, ..., vt
  double probability = 0.0;
  ComplexVector amplitudes;         // normalized
};

struct Snapshot {
  std::vector<BranchState> branches;  // measured-path run
  ComplexVector unmeasured;           // run without intermediate measurements
  std::vector<Side> owner;            // possession of every qubit
};

struct OutcomeRecord {
  std::vector<std::uint32_t> fa;
  std::vector<std::uint32_t> fb;
  unsigned output = 0;
  double probability = 0.0;
};

struct SimulationResult {
  QProtocolSpec spec;
  RegisterLayout layout;  // one qubit register per name
  /// before[t-1]: state before round t, V_t measured (t = 1..k+1).
  std::vector<Snapshot> before;
  /// after[t-1]: state after round t, V_{t+1} not yet measured (t = 1..k).
  std::vector<Snapshot> after;
  std::size_t communicated_qubits = 0;
  std::size_t bob_to_alice_qubits = 0;
  double delta = 0.0;  // communicated qubits / n
  std::vector<OutcomeRecord> distribution;  // from the unmeasured run
  std::vector<OutcomeRecord> measured_distribution;  // from the measured-path run
  double error = 0.0;  // Pr[output != f_k] on the uniform input
};

/// Validates the spec (possession, controls-only use of input qubits,
/// unitarity, scale) and simulates it. Throws std::invalid_argument.
SimulationResult run_superposed(const QProtocolSpec& spec);

/// d_t = E_branch D(registers of the non-owner of v_t's side : F(v_t)), with the
/// pointer register dephased; t = 1..k+1.
double round_distance(const SimulationResult& sim, std::size_t t);

struct GammaBeta {
  std::vector<double> gamma;  // per value v of V_{t+1}
  std::vector<double> beta;   // per vertex v on the side of V_{t+1}
  double mean_gamma = 0.0;    // weighted by Pr[V_{t+1} = v]
  double mean_beta = 0.0;     // uniform over v
};

/// Disturbance and marginal-information distances for the step t -> t+1, t = 1..k.
GammaBeta round_gamma_beta(const SimulationResult& sim, std::size_t t);

struct InformationBound {
  double unmeasured = 0.0;  // I(M_A F_A : F_B) without intermediate measurements
  double measured = 0.0;    // same on the measured-path mixture
  double bound = 0.0;       // 2 delta n
};

/// Alice's information on F_B before round t, t = 1..k+1.
InformationBound info_bound(const SimulationResult& sim, std::size_t t);

struct RoundDiagnostics {
  std::size_t t = 0;
  double d = 0.0;
  std::vector<double> gamma;
  std::vector<double> beta;
  double mean_gamma = 0.0;
  double mean_beta = 0.0;
  double info_unmeasured = 0.0;
  double info_measured = 0.0;
  double info_bound = 0.0;  // 2 delta n
  double delta = 0.0;
};

/// Rows t = 1..k+1; gamma/beta are empty on the last row.
std::vector<RoundDiagnostics> diagnose(const SimulationResult& sim);

struct InductionCheck {
  std::size_t t = 0;  // checks d_{t+1} against d_t
  double recursion_rhs = 0.0;      // 4 sqrt(d_t) + sqrt(4 delta)
  double closed_form_rhs = 0.0;    // 3^t delta^(1/2^t)
  bool recursion_holds = true;
  bool closed_form_holds = true;   // reported, not required
  bool gamma_holds = true;         // E gamma <= d_t
  bool beta_holds = true;          // E beta <= sqrt(4 delta)
};

struct InductionReport {
  bool rounds_applicable = true;   // Bob start
  bool start_is_zero = true;       // d_1 = 0
  std::vector<InductionCheck> rounds;
  bool info_holds = true;
  bool endpoint_applicable = false;  // Bob start and measured error <= 1/3
  bool endpoint_holds = true;        // d_{k+1} >= 1/3 when applicable
  bool all_required() const;
};

inline constexpr double kSimTolerance = 1e-6;

/// The round inequalities are stated for Bob-start protocols; for an Alice
/// start only the information and endpoint checks are evaluated.
InductionReport check_induction(const std::vector<RoundDiagnostics>& diag, double delta,
                                double measured_error, Side starter = Side::B,
                                double tolerance = kSimTolerance);

// --- spec construction and interchange ---------------------------------------

/// Named toy protocols over n = 2: identity, product, classical_k1,
/// classical_k2, relay_k2, leak_k1, leak_k2.
QProtocolSpec toy_protocol(const std::string& name);
std::vector<std::string> toy_protocol_names();
/// Random controlled unitaries and one transferred qubit per round, Bob starting.
QProtocolSpec random_protocol(std::size_t k, std::mt19937_64& rng);

std::string spec_to_json(const QProtocolSpec& spec);
QProtocolSpec spec_from_json(const std::string& text);

}  // namespace qround::qsim
