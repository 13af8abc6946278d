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

// Gate constructors and the JSON interchange format for protocol specs.
//
//   {"name": ..., "n": 2, "k": 1, "starter": "B",
//    "work": [{"name": "m0", "owner": "B"}, ...],
//    "rounds": [{"gates": [G, ...], "send": ["m0"]}, ...],
//    "announce": [G, ...], "output": "out"}
//
// A gate G lists its "qubits" and exactly one of "named" (x, h, cx, cz, swap,
// ccx), "permutation" (image of every basis index) or "matrix" (rows of
// [re, im] pairs).

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "qround/qsim.hpp"

namespace qround::qsim {

namespace {

using nlohmann::json;

Side parse_side(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  throw std::invalid_argument("side must be \"A\" or \"B\"");
}

std::string side_string(Side s) { return std::string(1, pj::side_name(s)); }

json gate_to_json(const Gate& g) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < g.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < g.matrix.cols(); ++j)
      row.push_back({g.matrix(i, j).real(), g.matrix(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"qubits", g.qubits}, {"matrix", std::move(rows)}};
}

Gate gate_from_json(const json& j) {
  auto qubits = j.at("qubits").get<std::vector<std::string>>();
  const int forms = j.contains("named") + j.contains("permutation") + j.contains("matrix");
  if (forms != 1) throw std::invalid_argument("gate needs exactly one of named, permutation, matrix");
  if (j.contains("named")) return Gate::named(j.at("named").get<std::string>(), std::move(qubits));
  if (j.contains("permutation"))
    return Gate::permutation(std::move(qubits), j.at("permutation").get<std::vector<std::uint32_t>>());
  const auto& rows = j.at("matrix");
  const auto dim = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& row = rows.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != dim) throw std::invalid_argument("gate matrix must be square");
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto& e = row.at(static_cast<std::size_t>(c));
      m(r, c) = e.is_number() ? Complex(e.get<double>(), 0.0)
                              : Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return {std::move(qubits), std::move(m)};
}

std::vector<Gate> gates_from_json(const json& j) {
  std::vector<Gate> out;
  for (const auto& g : j) out.push_back(gate_from_json(g));
  return out;
}

}  // namespace

Gate Gate::named(const std::string& name, std::vector<std::string> qubits) {
  const Complex r(1.0 / std::sqrt(2.0), 0.0);
  auto expect = [&](std::size_t q) {
    if (qubits.size() != q) throw std::invalid_argument("gate '" + name + "' expects " + std::to_string(q) + " qubits");
  };
  if (name == "x") {
    expect(1);
    return permutation(std::move(qubits), {1, 0});
  }
  if (name == "h") {
    expect(1);
    ComplexMatrix m(2, 2);
    m << r, r, r, -r;
    return {std::move(qubits), std::move(m)};
  }
  if (name == "cx") {
    expect(2);
    return permutation(std::move(qubits), {0, 1, 3, 2});
  }
  if (name == "cz") {
    expect(2);
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return {std::move(qubits), std::move(m)};
  }
  if (name == "swap") {
    expect(2);
    return permutation(std::move(qubits), {0, 2, 1, 3});
  }
  if (name == "ccx") {
    expect(3);
    return permutation(std::move(qubits), {0, 1, 2, 3, 4, 5, 7, 6});
  }
  throw std::invalid_argument("unknown gate '" + name + "'");
}

Gate Gate::permutation(std::vector<std::string> qubits, const std::vector<std::uint32_t>& image) {
  const std::size_t dim = std::size_t{1} << qubits.size();
  if (image.size() != dim) throw std::invalid_argument("permutation length must be 2^qubits");
  std::vector<bool> hit(dim, false);
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < dim; ++i) {
    if (image[i] >= dim || hit[image[i]]) throw std::invalid_argument("not a permutation");
    hit[image[i]] = true;
    m(image[i], static_cast<Eigen::Index>(i)) = 1.0;
  }
  return {std::move(qubits), std::move(m)};
}

Gate Gate::from_function(std::vector<std::string> qubits,
                         const std::function<std::uint32_t(std::uint32_t)>& f) {
  std::vector<std::uint32_t> image(std::size_t{1} << qubits.size());
  for (std::uint32_t i = 0; i < image.size(); ++i) image[i] = f(i);
  return permutation(std::move(qubits), image);
}

Gate Gate::controlled_pair(const std::string& control, std::vector<std::string> targets,
                           const ComplexMatrix& u0, const ComplexMatrix& u1) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (u0.rows() != d || u0.cols() != d || u1.rows() != d || u1.cols() != d)
    throw std::invalid_argument("controlled blocks do not match the target qubits");
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = u0;
  m.bottomRightCorner(d, d) = u1;
  targets.insert(targets.begin(), control);
  return {std::move(targets), std::move(m)};
}

std::string spec_to_json(const QProtocolSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["starter"] = side_string(spec.starter);
  j["work"] = json::array();
  for (const auto& w : spec.work) j["work"].push_back({{"name", w.name}, {"owner", side_string(w.owner)}});
  j["rounds"] = json::array();
  for (const auto& r : spec.rounds) {
    json gates = json::array();
    for (const auto& g : r.gates) gates.push_back(gate_to_json(g));
    j["rounds"].push_back({{"gates", std::move(gates)}, {"send", r.send}});
  }
  j["announce"] = json::array();
  for (const auto& g : spec.announce) j["announce"].push_back(gate_to_json(g));
  j["output"] = spec.output;
  return j.dump(2) + "\n";
}

QProtocolSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("protocol spec is not valid JSON: ") + e.what());
  }
  try {
    QProtocolSpec spec;
    spec.name = j.value("name", std::string("custom"));
    spec.n = j.at("n").get<std::size_t>();
    spec.k = j.at("k").get<std::size_t>();
    spec.starter = parse_side(j.value("starter", json("B")));
    for (const auto& w : j.value("work", json::array()))
      spec.work.push_back({w.at("name").get<std::string>(), parse_side(w.at("owner"))});
    for (const auto& r : j.at("rounds")) {
      RoundSpec round;
      round.gates = gates_from_json(r.value("gates", json::array()));
      round.send = r.value("send", std::vector<std::string>{});
      spec.rounds.push_back(std::move(round));
    }
    spec.announce = gates_from_json(j.value("announce", json::array()));
    spec.output = j.at("output").get<std::string>();
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed protocol spec: ") + e.what());
  }
}

}  // namespace qround::qsim
