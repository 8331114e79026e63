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

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtd/dual.hpp"
#include "qtd/error.hpp"

namespace qtd {

/// Affine symbolic rotation angle.
///
///   Const:        offset
///   Param:        scale * params[index] + offset
///   InputArccos:  scale * arccos(inputs[index]) + offset
///
/// The encoding gate of a QSP chain is RX(InputArccos(var, -2, 0)).
struct AngleExpr {
  enum class Kind { Const, Param, InputArccos };

  Kind kind = Kind::Const;
  int index = 0;
  double scale = 1.0;
  double offset = 0.0;

  static AngleExpr constant(double radians) {
    return {Kind::Const, 0, 1.0, radians};
  }
  static AngleExpr param(int slot, double scale = 1.0, double offset = 0.0) {
    return {Kind::Param, slot, scale, offset};
  }
  static AngleExpr input_arccos(int var, double scale, double offset = 0.0) {
    return {Kind::InputArccos, var, scale, offset};
  }

  /// The expression multiplied by `s`.
  AngleExpr scaled(double s) const {
    AngleExpr out = *this;
    out.scale *= s;
    out.offset *= s;
    return out;
  }
  AngleExpr shifted(double delta) const {
    AngleExpr out = *this;
    out.offset += delta;
    return out;
  }

  template <Scalar S>
  S eval(std::span<const S> params, std::span<const S> inputs) const {
    switch (kind) {
      case Kind::Const:
        return S(offset);
      case Kind::Param:
        return params[static_cast<std::size_t>(index)] * scale + offset;
      case Kind::InputArccos:
        return checked_acos(inputs[static_cast<std::size_t>(index)]) * scale +
               offset;
    }
    return S(0.0);
  }

  friend bool operator==(const AngleExpr&, const AngleExpr&) = default;
};

enum class GateKind { H, X, RX, RZ, CNOT, RZZ, PrepareAmplitudes };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);

struct Control {
  int qubit = 0;
  int polarity = 1;  // 1: fires on |1>, 0: fires on |0>
  friend bool operator==(const Control&, const Control&) = default;
};

/// One gate. Controlled gates are flattened: `controls` lists the control
/// qubits of the base operation `kind` acting on `qubits`.
///
/// Target layout per kind:
///   H, X, RX, RZ          {q}
///   CNOT                  {control, target}
///   RZZ                   {a, b}, exp(-i angle/2 Z(x)Z)
///   PrepareAmplitudes     register, most significant qubit first
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;
  AngleExpr angle;
  std::vector<Control> controls;
  std::vector<double> amplitudes;

  static Gate h(int q) { return {GateKind::H, {q}, {}, {}, {}}; }
  static Gate x(int q) { return {GateKind::X, {q}, {}, {}, {}}; }
  static Gate rx(int q, AngleExpr a) { return {GateKind::RX, {q}, a, {}, {}}; }
  static Gate rz(int q, AngleExpr a) { return {GateKind::RZ, {q}, a, {}, {}}; }
  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}, {}, {}, {}};
  }
  static Gate rzz(int a, int b, AngleExpr angle) {
    return {GateKind::RZZ, {a, b}, angle, {}, {}};
  }
  static Gate prepare(std::vector<int> reg, std::vector<double> amps) {
    return {GateKind::PrepareAmplitudes, std::move(reg), {}, {},
            std::move(amps)};
  }

  bool has_angle() const {
    return kind == GateKind::RX || kind == GateKind::RZ ||
           kind == GateKind::RZZ;
  }
  bool is_controlled() const { return !controls.empty(); }
  /// Targets and controls.
  std::vector<int> touched() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list over `width` qubits with `n_params` trainable slots
/// and `n_inputs` classical input variables.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int width, int n_params = 0, int n_inputs = 0);

  int width() const { return width_; }
  int n_params() const { return n_params_; }
  int n_inputs() const { return n_inputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Appends after validating qubit indices, slot references and amplitude
  /// normalisation.
  Circuit& add(Gate gate);
  /// Appends every gate of `other`; widths and slot counts must fit.
  Circuit& append(const Circuit& other);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int width_ = 0;
  int n_params_ = 0;
  int n_inputs_ = 0;
  std::vector<Gate> gates_;
};

/// Single-qubit chain RZ(theta_L) S(x) RZ(theta_{L-1}) ... S(x) RZ(theta_0)
/// with S(x) = RX(-2 arccos x), written in time order
/// RZ(theta_0), S, RZ(theta_1), ..., S, RZ(theta_L).
/// Uses parameter slots param_base .. param_base + L.
Circuit build_qsp_chain(int degree, int param_base = 0, int input_var = 0);

/// Relabels qubit q to qubit_map[q] in a circuit of width `new_width`.
Circuit embed(const Circuit& circuit, std::span<const int> qubit_map,
              int new_width, int n_params = -1, int n_inputs = -1);

/// Adds `controls` to every gate. The width grows to hold the controls;
/// controls that coincide with a gate's qubits raise IndexCollisionError.
Circuit controlled_wrap(const Circuit& circuit,
                        std::span<const Control> controls);

}  // namespace qtd
