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

#include "qtd/circuit.hpp"

namespace qtd {

/// Rewrites the circuit into single-qubit gates and CNOTs.
///
///   C-RZ(t)       RZ(t/2), CNOT, RZ(-t/2), CNOT
///   C-RX(t)       H, C-RZ(t), H
///   CC-R(t)       C2-V, CNOT(c1,c2), C2-V^dag, CNOT(c1,c2), C1-V with
///                 V = R(t/2), c2 the first and c1 the last listed control
///   RZZ(t)        CNOT(a,b), RZ_b(t), CNOT(a,b); controls move onto RZ_b
///   C-X           CNOT
///
/// Zero-polarity controls are conjugated by X, and adjacent X pairs on the
/// same qubit cancel. The result equals the input exactly (no global
/// phase). More than two controls, controlled H, controlled CNOT and
/// amplitude preparation raise UnsupportedLoweringError.
Circuit lower_to_cnot_single(const Circuit& circuit);

}  // namespace qtd
