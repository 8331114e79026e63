// Copyright 2026 The qtdpinn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qtd/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qtd {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::RX:
      return "RX";
    case GateKind::RZ:
      return "RZ";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::RZZ:
      return "RZZ";
    case GateKind::PrepareAmplitudes:
      return "PrepareAmplitudes";
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  for (auto k : {GateKind::H, GateKind::X, GateKind::RX, GateKind::RZ,
                 GateKind::CNOT, GateKind::RZZ, GateKind::PrepareAmplitudes}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

std::vector<int> Gate::touched() const {
  std::vector<int> out = qubits;
  for (const auto& c : controls) out.push_back(c.qubit);
  return out;
}

namespace {

std::size_t expected_targets(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::RZZ:
      return 2;
    case GateKind::PrepareAmplitudes:
      return 0;  // any positive count
    default:
      return 1;
  }
}

}  // namespace

Circuit::Circuit(int width, int n_params, int n_inputs)
    : width_(width), n_params_(n_params), n_inputs_(n_inputs) {
  if (width < 0 || n_params < 0 || n_inputs < 0)
    throw InvalidArgument("circuit dimensions must be non-negative");
}

Circuit& Circuit::add(Gate gate) {
  const std::size_t want = expected_targets(gate.kind);
  if (want != 0 && gate.qubits.size() != want)
    throw InvalidArgument(std::string(to_string(gate.kind)) +
                          " takes " + std::to_string(want) + " qubit(s)");
  if (gate.qubits.empty()) throw InvalidArgument("gate without targets");
  for (const auto& c : gate.controls) {
    if (c.polarity != 0 && c.polarity != 1)
      throw InvalidArgument("control polarity must be 0 or 1");
  }
  auto touched = gate.touched();
  for (int q : touched) {
    if (q < 0 || q >= width_)
      throw InvalidArgument("qubit " + std::to_string(q) +
                            " outside circuit width " + std::to_string(width_));
  }
  std::sort(touched.begin(), touched.end());
  if (std::adjacent_find(touched.begin(), touched.end()) != touched.end())
    throw IndexCollisionError("gate " + std::string(to_string(gate.kind)) +
                              " uses a qubit twice");
  if (gate.has_angle()) {
    const auto& a = gate.angle;
    if (a.kind == AngleExpr::Kind::Param &&
        (a.index < 0 || a.index >= n_params_))
      throw InvalidArgument("parameter slot " + std::to_string(a.index) +
                            " out of range");
    if (a.kind == AngleExpr::Kind::InputArccos &&
        (a.index < 0 || a.index >= n_inputs_))
      throw InvalidArgument("input variable " + std::to_string(a.index) +
                            " out of range");
  }
  if (gate.kind == GateKind::PrepareAmplitudes) {
    const std::size_t dim = std::size_t{1} << gate.qubits.size();
    if (gate.amplitudes.size() != dim)
      throw InvalidArgument("amplitude vector size must be 2^k");
    double norm = 0.0;
    for (double a : gate.amplitudes) {
      if (!(a >= 0.0)) throw InvalidArgument("amplitudes must be >= 0");
      norm += a * a;
    }
    if (std::abs(norm - 1.0) > 1e-12)
      throw InvalidArgument("amplitude vector must have unit norm");
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width_ > width_ || other.n_params_ > n_params_ ||
      other.n_inputs_ > n_inputs_)
    throw InvalidArgument("appended circuit does not fit");
  for (const auto& g : other.gates_) add(g);
  return *this;
}

Circuit build_qsp_chain(int degree, int param_base, int input_var) {
  if (degree < 0) throw InvalidArgument("QSP degree must be >= 0");
  Circuit c(1, param_base + degree + 1, input_var + 1);
  c.add(Gate::rz(0, AngleExpr::param(param_base)));
  for (int j = 1; j <= degree; ++j) {
    c.add(Gate::rx(0, AngleExpr::input_arccos(input_var, -2.0)));
    c.add(Gate::rz(0, AngleExpr::param(param_base + j)));
  }
  return c;
}

Circuit embed(const Circuit& circuit, std::span<const int> qubit_map,
              int new_width, int n_params, int n_inputs) {
  if (qubit_map.size() < static_cast<std::size_t>(circuit.width()))
    throw InvalidArgument("qubit map shorter than circuit width");
  Circuit out(new_width, n_params < 0 ? circuit.n_params() : n_params,
              n_inputs < 0 ? circuit.n_inputs() : n_inputs);
  for (Gate g : circuit.gates()) {
    for (int& q : g.qubits) q = qubit_map[static_cast<std::size_t>(q)];
    for (auto& c : g.controls) c.qubit = qubit_map[static_cast<std::size_t>(c.qubit)];
    out.add(std::move(g));
  }
  return out;
}

Circuit controlled_wrap(const Circuit& circuit,
                        std::span<const Control> controls) {
  int width = circuit.width();
  for (const auto& c : controls) width = std::max(width, c.qubit + 1);
  Circuit out(width, circuit.n_params(), circuit.n_inputs());
  for (Gate g : circuit.gates()) {
    for (const auto& c : controls) {
      const auto t = g.touched();
      if (std::find(t.begin(), t.end(), c.qubit) != t.end())
        throw IndexCollisionError("control qubit " + std::to_string(c.qubit) +
                                  " collides with a gate qubit");
      g.controls.push_back(c);
    }
    out.add(std::move(g));
  }
  return out;
}

}  // namespace qtd
