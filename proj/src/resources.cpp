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
#include "qtd/resources.hpp"

#include <set>
#include <string>

namespace qtd {

std::string_view to_string(NativeGateSet set) {
  switch (set) {
    case NativeGateSet::DoubleControlledNative:
      return "double_controlled";
    case NativeGateSet::CnotSingleQubit:
      return "cnot_single";
  }
  return "?";
}

NativeGateSet native_gate_set_from_string(std::string_view name) {
  if (name == "double_controlled") return NativeGateSet::DoubleControlledNative;
  if (name == "cnot_single") return NativeGateSet::CnotSingleQubit;
  throw InvalidArgument("unknown native gate set '" + std::string(name) +
                        "' (expected double_controlled or cnot_single)");
}

int layered_depth(const Circuit& circuit, bool skip_pauli_x) {
  int depth = 0;
  std::set<int> layer;
  for (const auto& g : circuit.gates()) {
    if (skip_pauli_x && g.kind == GateKind::X && g.controls.empty()) continue;
    const auto touched = g.touched();
    bool overlaps = depth == 0;
    for (int q : touched) overlaps = overlaps || layer.count(q) > 0;
    if (overlaps) {
      layer.clear();
      ++depth;
    }
    layer.insert(touched.begin(), touched.end());
  }
  return depth;
}

ResourceReport count_resources(const Circuit& circuit, NativeGateSet native) {
  ResourceReport r;
  r.width = circuit.width();
  r.n_params = circuit.n_params();
  r.depth = layered_depth(circuit);
  for (const auto& g : circuit.gates()) {
    const bool single = g.controls.empty() &&
                        (g.kind == GateKind::H || g.kind == GateKind::X ||
                         g.kind == GateKind::RX || g.kind == GateKind::RZ);
    const bool cnot = g.controls.empty() && g.kind == GateKind::CNOT;
    if (single) {
      ++r.n_single_qubit;
    } else if (cnot) {
      ++r.n_cnot;
    } else {
      if (native == NativeGateSet::CnotSingleQubit)
        throw NeedsLoweringError(std::string(to_string(g.kind)) +
                                 " gate is not native to cnot_single; lower "
                                 "the circuit first");
      ++r.n_multi_controlled;
    }
  }
  return r;
}

}  // namespace qtd
