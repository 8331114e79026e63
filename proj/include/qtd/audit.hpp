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

#include <string>
#include <string_view>
#include <vector>

#include "qtd/circuit.hpp"
#include "qtd/io.hpp"
#include "qtd/resources.hpp"

namespace qtd {

/// The four circuit families with published resource formulas: the
/// univariate model, the full-grid monomial LCU, the tensor-decomposed
/// circuit and its rank-1 case.
enum class Construction { Prop1, Thm1, Thm2, Cor1 };

/// "prop1", "thm1", "thm2", "cor1".
std::string_view to_string(Construction c);
Construction construction_from_string(std::string_view name);

struct AuditRequest {
  Construction construction = Construction::Prop1;
  int L = 1;
  int D = 1;
  int R = 1;
  NativeGateSet native = NativeGateSet::DoubleControlledNative;

  /// 1 <= L <= 16, 1 <= D <= 4, 1 <= R <= 16 and at most 4096 grid
  /// entries for thm1; throws SizeError or InvalidArgument.
  void validate() const;
};

/// One measured quantity against its closed form. `relation` is "==" or
/// "<="; `published` is the published bound as text.
struct AuditRow {
  std::string quantity;
  long long measured = 0;
  long long formula = 0;
  std::string relation;
  std::string published;
  bool passed = false;
};

struct AuditReport {
  AuditRequest request;
  ResourceReport measured;
  std::vector<AuditRow> rows;
  bool passed = false;
  /// Caveats on what was measured; empty when none apply.
  std::string note;
};

/// The structural circuit of a construction (thm2 uses unit weights, thm1
/// the full [0, L]^D grid).
Circuit construction_circuit(const AuditRequest& req);

/// Measures the circuit, lowering it first under CnotSingleQubit, and
/// compares against the closed forms. thm1 and thm2 are not lowered; under
/// CnotSingleQubit they get width and parameter rows only. Depths under CnotSingleQubit skip
/// the X gates that conjugate zero-polarity controls.
AuditReport audit_resources(const AuditRequest& req);

void to_json(Json& j, const AuditRow& r);
void to_json(Json& j, const AuditReport& r);

}  // namespace qtd
