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
#include "qtd/lowering.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace qtd {

namespace {

class Lowerer {
 public:
  explicit Lowerer(const Circuit& in)
      : width_(in.width()), n_params_(in.n_params()), n_inputs_(in.n_inputs()) {}

  void lower(const Gate& g) {
    if (g.kind == GateKind::PrepareAmplitudes)
      throw UnsupportedLoweringError("amplitude preparation is not lowered");
    if (g.controls.size() > 2)
      throw UnsupportedLoweringError(
          "lowering supports at most two controls, gate has " +
          std::to_string(g.controls.size()));
    std::vector<int> flipped;
    std::vector<int> ctrls;
    for (const auto& c : g.controls) {
      ctrls.push_back(c.qubit);
      if (c.polarity == 0) flipped.push_back(c.qubit);
    }
    for (int q : flipped) emit_x(q);
    lower_positive(g, ctrls);
    for (int q : flipped) emit_x(q);
  }

  Circuit take() && {
    Circuit out(width_, n_params_, n_inputs_);
    for (auto& g : gates_) out.add(std::move(g));
    return out;
  }

 private:
  void lower_positive(const Gate& g, const std::vector<int>& ctrls) {
    switch (g.kind) {
      case GateKind::H:
      case GateKind::CNOT:
        if (!ctrls.empty())
          throw UnsupportedLoweringError("controlled " +
                                         std::string(to_string(g.kind)) +
                                         " is not supported");
        emit(g);
        return;
      case GateKind::X:
        if (ctrls.empty()) {
          emit_x(g.qubits[0]);
        } else if (ctrls.size() == 1) {
          emit(Gate::cnot(ctrls[0], g.qubits[0]));
        } else {
          throw UnsupportedLoweringError("Toffoli is not supported");
        }
        return;
      case GateKind::RX:
      case GateKind::RZ:
        rotation(g.kind, g.qubits[0], g.angle, ctrls);
        return;
      case GateKind::RZZ:
        emit(Gate::cnot(g.qubits[0], g.qubits[1]));
        rotation(GateKind::RZ, g.qubits[1], g.angle, ctrls);
        emit(Gate::cnot(g.qubits[0], g.qubits[1]));
        return;
      case GateKind::PrepareAmplitudes:
        break;
    }
    throw UnsupportedLoweringError("unsupported gate");
  }

  void rotation(GateKind kind, int target, const AngleExpr& angle,
                const std::vector<int>& ctrls) {
    if (ctrls.empty()) {
      emit(Gate{kind, {target}, angle, {}, {}});
    } else if (ctrls.size() == 1) {
      controlled_rotation(kind, ctrls[0], target, angle);
    } else {
      // The last listed control closes the pattern, so a gate that follows
      // on the first control can share the final layer.
      const int c1 = ctrls[1], c2 = ctrls[0];
      const AngleExpr half = angle.scaled(0.5);
      controlled_rotation(kind, c2, target, half);
      emit(Gate::cnot(c1, c2));
      controlled_rotation(kind, c2, target, half.scaled(-1.0));
      emit(Gate::cnot(c1, c2));
      controlled_rotation(kind, c1, target, half);
    }
  }

  void controlled_rotation(GateKind kind, int control, int target,
                           const AngleExpr& angle) {
    if (kind == GateKind::RX) emit(Gate::h(target));
    emit(Gate::rz(target, angle.scaled(0.5)));
    emit(Gate::cnot(control, target));
    emit(Gate::rz(target, angle.scaled(-0.5)));
    emit(Gate::cnot(control, target));
    if (kind == GateKind::RX) emit(Gate::h(target));
  }

  // Cancels against the previous gate on q when that gate is a bare X.
  void emit_x(int q) {
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      const auto t = it->touched();
      if (std::find(t.begin(), t.end(), q) == t.end()) continue;
      if (it->kind == GateKind::X && it->controls.empty()) {
        gates_.erase(std::next(it).base());
        return;
      }
      break;
    }
    emit(Gate::x(q));
  }

  void emit(Gate g) { gates_.push_back(std::move(g)); }

  int width_;
  int n_params_;
  int n_inputs_;
  std::vector<Gate> gates_;
};

}  // namespace

Circuit lower_to_cnot_single(const Circuit& circuit) {
  Lowerer lw(circuit);
  for (const auto& g : circuit.gates()) lw.lower(g);
  return std::move(lw).take();
}

}  // namespace qtd
