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

#include "qround/qsim.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "qround/quantum_info.hpp"

namespace qround::qsim {

namespace {

constexpr double kUnitarity = 1e-9;
constexpr double kControlLeak = 1e-12;
constexpr double kBranchFloor = 1e-14;

// Side of the 1-based path vertex v_j.
Side vertex_side(std::size_t j) { return j % 2 == 1 ? Side::A : Side::B; }

struct QubitInfo {
  std::string name;
  Side owner = Side::A;
  bool input = false;
};

struct Machine {
  std::vector<QubitInfo> qubits;
  std::unordered_map<std::string, std::size_t> position;
  RegisterLayout layout;
  std::size_t input_count = 0;

  std::size_t count() const { return qubits.size(); }
  std::size_t bit(std::size_t pos) const { return std::size_t{1} << (count() - 1 - pos); }

  std::size_t find(const std::string& name) const {
    const auto it = position.find(name);
    if (it == position.end()) throw std::invalid_argument("register misuse: unknown qubit '" + name + "'");
    return it->second;
  }
};

Machine build_machine(const QProtocolSpec& spec) {
  if (spec.n != 2 && spec.n != 4) throw std::invalid_argument("scale limits exceeded: n must be 2 or 4");
  if (spec.k == 0) throw std::invalid_argument("register misuse: k must be at least 1");
  if (spec.rounds.size() != spec.k) throw std::invalid_argument("register misuse: expected exactly k rounds");
  Machine m;
  std::vector<Register> regs;
  auto add = [&](const std::string& name, Side owner, bool input) {
    if (!m.position.emplace(name, m.qubits.size()).second)
      throw std::invalid_argument("register misuse: duplicate qubit '" + name + "'");
    m.qubits.push_back({name, owner, input});
    regs.push_back({name, 2});
  };
  for (Side s : {Side::A, Side::B})
    for (const auto& q : input_register(s, spec.n)) add(q, s, true);
  m.input_count = m.qubits.size();
  for (const auto& w : spec.work) add(w.name, w.owner, false);
  if (m.count() > kMaxQubits) throw std::invalid_argument("scale limits exceeded: too many qubits");
  m.layout = RegisterLayout(std::move(regs));
  return m;
}

struct Compiled {
  std::vector<std::size_t> positions;
  std::vector<std::size_t> offsets;  // local index -> global bit pattern
  std::size_t mask = 0;
  ComplexMatrix matrix;
};

Compiled compile(const Gate& g, const Machine& m, const std::vector<Side>& owner, Side active) {
  const std::size_t q = g.qubits.size();
  if (q == 0) throw std::invalid_argument("register misuse: gate without qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << q);
  if (g.matrix.rows() != dim || g.matrix.cols() != dim)
    throw std::invalid_argument("register misuse: gate matrix does not match its qubit count");
  const ComplexMatrix check = g.matrix.adjoint() * g.matrix - ComplexMatrix::Identity(dim, dim);
  if (max_abs_entry(check) > kUnitarity) throw std::invalid_argument("register misuse: gate is not unitary");

  Compiled c;
  c.matrix = g.matrix;
  std::size_t input_local = 0;
  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t pos = m.find(g.qubits[i]);
    if (c.mask & m.bit(pos)) throw std::invalid_argument("register misuse: repeated qubit in gate");
    if (owner[pos] != active)
      throw std::invalid_argument("register misuse: qubit '" + g.qubits[i] + "' is not held by the active player");
    if (m.qubits[pos].input) input_local |= std::size_t{1} << (q - 1 - i);
    c.mask |= m.bit(pos);
    c.positions.push_back(pos);
  }
  // Input qubits may only steer the gate: the matrix must be block diagonal in them.
  if (input_local != 0)
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j)
        if (((static_cast<std::size_t>(i) ^ static_cast<std::size_t>(j)) & input_local) != 0 &&
            std::abs(g.matrix(i, j)) > kControlLeak)
          throw std::invalid_argument("register misuse: gate changes an input qubit");
  c.offsets.resize(static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < c.offsets.size(); ++j) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < q; ++i)
      if (j >> (q - 1 - i) & 1u) off |= m.bit(c.positions[i]);
    c.offsets[j] = off;
  }
  return c;
}

void apply(const Compiled& c, ComplexVector& psi) {
  const std::size_t dim = c.offsets.size();
  ComplexVector local(static_cast<Eigen::Index>(dim));
  for (std::size_t base = 0; base < static_cast<std::size_t>(psi.size()); ++base) {
    if (base & c.mask) continue;
    for (std::size_t j = 0; j < dim; ++j) local[static_cast<Eigen::Index>(j)] = psi[static_cast<Eigen::Index>(base | c.offsets[j])];
    const ComplexVector out = c.matrix * local;
    for (std::size_t j = 0; j < dim; ++j) psi[static_cast<Eigen::Index>(base | c.offsets[j])] = out[static_cast<Eigen::Index>(j)];
  }
}

std::uint32_t read_value(std::size_t index, const Machine& m, const std::vector<std::string>& qubits) {
  std::uint32_t v = 0;
  for (const auto& q : qubits) v = (v << 1) | ((index & m.bit(m.find(q))) ? 1u : 0u);
  return v;
}

std::vector<BranchState> measure_pointer(const std::vector<BranchState>& branches, const Machine& m,
                                         Side side, std::size_t n) {
  std::vector<BranchState> out;
  for (const auto& b : branches) {
    const auto qubits = pointer_qubits(side, b.path.back(), n);
    std::vector<ComplexVector> parts(n, ComplexVector::Zero(b.amplitudes.size()));
    for (Eigen::Index i = 0; i < b.amplitudes.size(); ++i)
      parts[read_value(static_cast<std::size_t>(i), m, qubits)][i] = b.amplitudes[i];
    for (std::uint32_t u = 0; u < n; ++u) {
      const double weight = parts[u].squaredNorm();
      if (weight * b.probability <= kBranchFloor) continue;
      BranchState child;
      child.path = b.path;
      child.path.push_back(u);
      child.probability = b.probability * weight;
      child.amplitudes = parts[u] / std::sqrt(weight);
      out.push_back(std::move(child));
    }
  }
  return out;
}

std::vector<OutcomeRecord> outcome_distribution(const std::vector<std::pair<double, const ComplexVector*>>& parts,
                                                const Machine& m, std::size_t n, std::size_t out_pos) {
  std::map<std::tuple<std::vector<std::uint32_t>, std::vector<std::uint32_t>, unsigned>, double> acc;
  for (const auto& [weight, psi] : parts)
    for (Eigen::Index i = 0; i < psi->size(); ++i) {
      const double p = weight * std::norm((*psi)[i]);
      if (p <= 0.0) continue;
      const auto idx = static_cast<std::size_t>(i);
      std::vector<std::uint32_t> fa(n), fb(n);
      for (std::uint32_t u = 0; u < n; ++u) {
        fa[u] = read_value(idx, m, pointer_qubits(Side::A, u, n));
        fb[u] = read_value(idx, m, pointer_qubits(Side::B, u, n));
      }
      acc[{fa, fb, (idx & m.bit(out_pos)) ? 1u : 0u}] += p;
    }
  std::vector<OutcomeRecord> out;
  for (const auto& [key, p] : acc) {
    if (p <= kBranchFloor) continue;
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), p});
  }
  return out;
}

std::vector<std::string> held_by(const SimulationResult& sim, const std::vector<Side>& owner, Side s) {
  std::vector<std::string> out;
  const auto labels = sim.layout.labels();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (owner[i] == s) out.push_back(labels[i]);
  return out;
}

std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void check_scale(std::size_t qubits) {
  if (qubits > kMaxReducedQubits) throw std::invalid_argument("scale limits exceeded: reduced state too large");
}

DensityMatrix reduced(const ComplexVector& psi, const SimulationResult& sim,
                      const std::vector<std::string>& keep) {
  return DensityMatrix(reduced_density(psi, sim.layout, keep), sim.layout.restrict_to(keep));
}

// D(x : p) with the pointer register p dephased.
double pointer_distance(const DensityMatrix& rho, const std::vector<std::string>& x,
                        const std::vector<std::string>& p) {
  const DensityMatrix measured(dephase(rho.matrix(), rho.layout(), p), rho.layout());
  return informational_distance(measured, x, p);
}

void require_round(const SimulationResult& sim, std::size_t t, std::size_t last) {
  if (t < 1 || t > last) throw std::invalid_argument("round index out of range");
  (void)sim;
}

}  // namespace

std::string input_qubit(Side side, std::uint32_t vertex, unsigned bit) {
  return std::string("F") + pj::side_name(side) + std::to_string(vertex) + "." + std::to_string(bit);
}

std::vector<std::string> pointer_qubits(Side side, std::uint32_t vertex, std::size_t n) {
  std::vector<std::string> out;
  for (unsigned b = 0; b < pj::code_width(n); ++b) out.push_back(input_qubit(side, vertex, b));
  return out;
}

std::vector<std::string> input_register(Side side, std::size_t n) {
  std::vector<std::string> out;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto p = pointer_qubits(side, v, n);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Side speaker(Side starter, std::size_t t) { return t % 2 == 1 ? starter : pj::other(starter); }

SimulationResult run_superposed(const QProtocolSpec& spec) {
  const Machine m = build_machine(spec);
  const std::size_t n = spec.n;
  SimulationResult sim;
  sim.spec = spec;
  sim.layout = m.layout;

  std::vector<Side> owner;
  for (const auto& q : m.qubits) owner.push_back(q.owner);

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << m.count());
  ComplexVector psi = ComplexVector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << m.input_count));
  const std::size_t work_bits = m.count() - m.input_count;
  for (std::size_t x = 0; x < (std::size_t{1} << m.input_count); ++x)
    psi[static_cast<Eigen::Index>(x << work_bits)] = amp;

  Snapshot snap;
  snap.branches.push_back({{pj::kStart.index}, 1.0, psi});
  snap.unmeasured = psi;
  snap.owner = owner;
  sim.before.push_back(snap);

  for (std::size_t t = 1; t <= spec.k; ++t) {
    const Side active = speaker(spec.starter, t);
    const RoundSpec& round = spec.rounds[t - 1];
    for (const auto& g : round.gates) {
      const Compiled c = compile(g, m, snap.owner, active);
      for (auto& b : snap.branches) apply(c, b.amplitudes);
      apply(c, snap.unmeasured);
    }
    std::set<std::size_t> sent;
    for (const auto& name : round.send) {
      const std::size_t pos = m.find(name);
      if (m.qubits[pos].input) throw std::invalid_argument("register misuse: input qubits cannot be sent");
      if (snap.owner[pos] != active || !sent.insert(pos).second)
        throw std::invalid_argument("register misuse: qubit '" + name + "' is not held by the sender");
      snap.owner[pos] = pj::other(active);
      ++sim.communicated_qubits;
      if (active == Side::B) ++sim.bob_to_alice_qubits;
    }
    sim.after.push_back(snap);
    snap.branches = measure_pointer(snap.branches, m, vertex_side(t), n);
    sim.before.push_back(snap);
  }

  const Side announcer = speaker(spec.starter, spec.k + 1);
  for (const auto& g : spec.announce) {
    const Compiled c = compile(g, m, snap.owner, announcer);
    for (auto& b : snap.branches) apply(c, b.amplitudes);
    apply(c, snap.unmeasured);
  }
  const std::size_t out_pos = m.find(spec.output);
  if (m.qubits[out_pos].input || snap.owner[out_pos] != announcer)
    throw std::invalid_argument("register misuse: output qubit must be a work qubit held by the announcer");

  sim.delta = static_cast<double>(sim.communicated_qubits) / static_cast<double>(n);
  sim.distribution = outcome_distribution({{1.0, &snap.unmeasured}}, m, n, out_pos);
  std::vector<std::pair<double, const ComplexVector*>> parts;
  for (const auto& b : snap.branches) parts.emplace_back(b.probability, &b.amplitudes);
  sim.measured_distribution = outcome_distribution(parts, m, n, out_pos);
  for (const auto& r : sim.distribution)
    if (r.output != pj::f_k(pj::PointerInstance(r.fa, r.fb), spec.k)) sim.error += r.probability;
  return sim;
}

double round_distance(const SimulationResult& sim, std::size_t t) {
  require_round(sim, t, sim.spec.k + 1);
  const Snapshot& snap = sim.before[t - 1];
  const Side pointer_side = vertex_side(t);
  const auto x = held_by(sim, snap.owner, pj::other(pointer_side));
  check_scale(x.size() + pj::code_width(sim.spec.n));
  double d = 0.0;
  for (const auto& b : snap.branches) {
    const auto p = pointer_qubits(pointer_side, b.path.back(), sim.spec.n);
    d += b.probability * pointer_distance(reduced(b.amplitudes, sim, join(x, p)), x, p);
  }
  return d;
}

GammaBeta round_gamma_beta(const SimulationResult& sim, std::size_t t) {
  require_round(sim, t, sim.spec.k);
  const std::size_t n = sim.spec.n;
  const Snapshot& parent = sim.after[t - 1];
  const Snapshot& child = sim.before[t];
  GammaBeta out;

  const auto q = held_by(sim, parent.owner, pj::other(vertex_side(t)));
  check_scale(q.size());
  std::map<std::vector<std::uint32_t>, ComplexMatrix> parent_states;
  for (const auto& b : parent.branches)
    parent_states.emplace(b.path, reduced_density(b.amplitudes, sim.layout, q));
  std::vector<double> weight(n, 0.0), acc(n, 0.0);
  for (const auto& c : child.branches) {
    const std::vector<std::uint32_t> up(c.path.begin(), c.path.end() - 1);
    const ComplexMatrix diff = reduced_density(c.amplitudes, sim.layout, q) - parent_states.at(up);
    const double g = trace_norm(diff);
    acc[c.path.back()] += c.probability * g;
    weight[c.path.back()] += c.probability;
  }
  out.gamma.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (weight[v] > 0.0) out.gamma[v] = acc[v] / weight[v];
    out.mean_gamma += acc[v];
  }

  const Side next_side = vertex_side(t + 1);
  const auto x = held_by(sim, parent.owner, pj::other(next_side));
  check_scale(x.size() + pj::code_width(n));
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto p = pointer_qubits(next_side, v, n);
    const double b = pointer_distance(reduced(parent.unmeasured, sim, join(x, p)), x, p);
    out.beta.push_back(b);
    out.mean_beta += b / static_cast<double>(n);
  }
  return out;
}

InformationBound info_bound(const SimulationResult& sim, std::size_t t) {
  require_round(sim, t, sim.spec.k + 1);
  const Snapshot& snap = sim.before[t - 1];
  const auto x = held_by(sim, snap.owner, Side::A);
  const auto y = input_register(Side::B, sim.spec.n);
  const auto keep = join(x, y);
  check_scale(keep.size());
  InformationBound out;
  out.unmeasured = mutual_information(reduced(snap.unmeasured, sim, keep), x, y);
  const auto sub = sim.layout.restrict_to(keep);
  ComplexMatrix mix = ComplexMatrix::Zero(static_cast<Eigen::Index>(sub.total_dim()),
                                          static_cast<Eigen::Index>(sub.total_dim()));
  for (const auto& b : snap.branches) mix += b.probability * reduced_density(b.amplitudes, sim.layout, keep);
  out.measured = mutual_information(DensityMatrix(mix, sub), x, y);
  out.bound = 2.0 * static_cast<double>(sim.communicated_qubits);
  return out;
}

std::vector<RoundDiagnostics> diagnose(const SimulationResult& sim) {
  std::vector<RoundDiagnostics> rows;
  for (std::size_t t = 1; t <= sim.spec.k + 1; ++t) {
    RoundDiagnostics r;
    r.t = t;
    r.d = round_distance(sim, t);
    if (t <= sim.spec.k) {
      auto gb = round_gamma_beta(sim, t);
      r.gamma = std::move(gb.gamma);
      r.beta = std::move(gb.beta);
      r.mean_gamma = gb.mean_gamma;
      r.mean_beta = gb.mean_beta;
    }
    const auto info = info_bound(sim, t);
    r.info_unmeasured = info.unmeasured;
    r.info_measured = info.measured;
    r.info_bound = info.bound;
    r.delta = sim.delta;
    rows.push_back(std::move(r));
  }
  return rows;
}

bool InductionReport::all_required() const {
  bool ok = start_is_zero && info_holds && endpoint_holds;
  for (const auto& r : rounds) ok = ok && r.recursion_holds && r.gamma_holds && r.beta_holds;
  return ok;
}

InductionReport check_induction(const std::vector<RoundDiagnostics>& diag, double delta,
                                double measured_error, Side starter, double tolerance) {
  InductionReport rep;
  rep.rounds_applicable = starter == Side::B;
  if (diag.empty()) return rep;
  const double beta_rhs = std::sqrt(4.0 * delta);
  if (rep.rounds_applicable) {
    rep.start_is_zero = std::abs(diag.front().d) <= tolerance;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      InductionCheck c;
      c.t = diag[i].t;
      const double next = diag[i + 1].d;
      c.recursion_rhs = 4.0 * std::sqrt(std::max(0.0, diag[i].d)) + beta_rhs;
      c.closed_form_rhs = std::pow(3.0, static_cast<double>(c.t)) *
                          std::pow(delta, 1.0 / std::pow(2.0, static_cast<double>(c.t)));
      c.recursion_holds = next <= c.recursion_rhs + tolerance;
      c.closed_form_holds = next <= c.closed_form_rhs + tolerance;
      c.gamma_holds = diag[i].mean_gamma <= diag[i].d + tolerance;
      c.beta_holds = diag[i].mean_beta <= beta_rhs + tolerance;
      rep.rounds.push_back(c);
    }
  }
  for (const auto& r : diag)
    rep.info_holds = rep.info_holds && r.info_unmeasured <= r.info_bound + tolerance &&
                     r.info_measured <= r.info_bound + tolerance;
  rep.endpoint_applicable = rep.rounds_applicable && measured_error <= 1.0 / 3.0 + tolerance;
  if (rep.endpoint_applicable) rep.endpoint_holds = diag.back().d >= 1.0 / 3.0 - tolerance;
  return rep;
}

}  // namespace qround::qsim
