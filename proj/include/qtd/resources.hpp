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

#include <string_view>

#include "qtd/circuit.hpp"

namespace qtd {

enum class NativeGateSet {
  /// Controlled rotations with any number of controls are one gate.
  DoubleControlledNative,
  /// Only single-qubit gates and CNOT.
  CnotSingleQubit,
};

std::string_view to_string(NativeGateSet set);
NativeGateSet native_gate_set_from_string(std::string_view name);

struct ResourceReport {
  int width = 0;
  int depth = 0;
  int n_single_qubit = 0;
  int n_cnot = 0;
  /// Multi-qubit gates other than CNOT: controlled rotations, ZZ rotations
  /// and amplitude preparation.
  int n_multi_controlled = 0;
  int n_params = 0;

  friend bool operator==(const ResourceReport&, const ResourceReport&) =
      default;
};

/// Greedy layering: a gate opens a new layer iff it shares a qubit with a
/// gate of the current layer. Pauli-X gates are skipped entirely when
/// `skip_pauli_x` is set.
int layered_depth(const Circuit& circuit, bool skip_pauli_x = false);

/// Counts gates per kind. Under CnotSingleQubit every gate must already be
/// native, otherwise NeedsLoweringError.
ResourceReport count_resources(const Circuit& circuit, NativeGateSet native);

}  // namespace qtd
