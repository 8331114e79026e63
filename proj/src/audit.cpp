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

#include "qtd/audit.hpp"

#include <string>

#include "qtd/constructions.hpp"
#include "qtd/lowering.hpp"

namespace qtd {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool is_pow2(long long n) { return n > 0 && (n & (n - 1)) == 0; }

AuditRow row(std::string q, long long measured, long long formula,
             std::string relation, std::string published) {
  const bool ok = relation == "==" ? measured == formula : measured <= formula;
  return {std::move(q), measured, formula, std::move(relation),
          std::move(published), ok};
}

}  // namespace

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::Prop1:
      return "prop1";
    case Construction::Thm1:
      return "thm1";
    case Construction::Thm2:
      return "thm2";
    case Construction::Cor1:
      return "cor1";
  }
  return "?";
}

Construction construction_from_string(std::string_view name) {
  for (Construction c : {Construction::Prop1, Construction::Thm1,
                         Construction::Thm2, Construction::Cor1})
    if (to_string(c) == name) return c;
  throw InvalidArgument("unknown construction '" + std::string(name) +
                        "' (expected prop1, thm1, thm2 or cor1)");
}

void AuditRequest::validate() const {
  if (L < 1 || D < 1 || R < 1)
    throw InvalidArgument("L, D and R must be >= 1");
  if (L > 16 || D > 4 || R > 16)
    throw SizeError("audit caps are L <= 16, D <= 4, R <= 16");
  if (construction == Construction::Thm1 && ipow(L + 1, D) > 4096)
    throw SizeError("thm1 grid exceeds 4096 monomials");
}

Circuit construction_circuit(const AuditRequest& req) {
  req.validate();
  switch (req.construction) {
    case Construction::Prop1:
      return univariate_model_circuit(req.L);
    case Construction::Cor1:
      return rank1_circuit(req.D, req.L);
    case Construction::Thm2:
      return td_circuit(req.R, req.D, req.L, std::vector<double>(req.R, 1.0));
    case Construction::Thm1:
      return lcu_circuit(full_grid(req.D, req.L), req.D);
  }
  return {};
}

AuditReport audit_resources(const AuditRequest& req) {
  const Circuit native_circuit = construction_circuit(req);
  // The LCU families carry amplitude preparation and wide controls, which
  // have no lowering; under CnotSingleQubit only their layout is audited.
  const bool lowerable = req.construction == Construction::Prop1 ||
                         req.construction == Construction::Cor1;
  const bool lowered =
      req.native == NativeGateSet::CnotSingleQubit && lowerable;
  const Circuit c =
      lowered ? lower_to_cnot_single(native_circuit) : native_circuit;
  AuditReport out;
  out.request = req;
  if (req.native == NativeGateSet::CnotSingleQubit && !lowerable)
    out.note =
        "amplitude preparation and multi-controlled gates are not lowered; "
        "gate counts are reported for the native circuit only";
  out.measured = count_resources(
      c, lowered || lowerable ? req.native
                              : NativeGateSet::DoubleControlledNative);
  if (lowered) out.measured.depth = layered_depth(c, true);
  const ResourceReport& m = out.measured;
  const long long L = req.L, D = req.D, R = req.R;
  auto& rows = out.rows;

  switch (req.construction) {
    case Construction::Prop1:
      rows.push_back(row("width", m.width, 3, "==", "3"));
      rows.push_back(row("params", m.n_params, 2 * L + 1, "==", "2L+1"));
      if (lowered) {
        rows.push_back(row("single_qubit", m.n_single_qubit, 36 * L, "<=",
                           "36L"));
        rows.push_back(row("cnot", m.n_cnot, 32 * L, "<=", "32L"));
        rows.push_back(row("depth", m.depth, 60 * L - 5, "<=", "60L-5"));
      } else {
        rows.push_back(row("multi_controlled", m.n_multi_controlled, 4 * L,
                           "==", "4L"));
        rows.push_back(row("single_qubit", m.n_single_qubit, 4, "==", "4"));
        rows.push_back(row("depth", m.depth, 4 * L + 2, "<=", "4L+2"));
      }
      break;
    case Construction::Cor1:
      rows.push_back(row("width", m.width, 2 * D + 1, "==", "2D+1"));
      rows.push_back(
          row("params", m.n_params, (2 * L + 1) * D, "==", "(2L+1)D"));
      if (lowered) {
        // D univariate blocks, each lowered like the univariate model.
        rows.push_back(row("single_qubit", m.n_single_qubit, 36 * L * D,
                           "<=", "-"));
        rows.push_back(row("cnot", m.n_cnot, 32 * L * D, "==", "-"));
        rows.push_back(row("depth", m.depth, D * (60 * L - 5), "<=", "-"));
      } else {
        rows.push_back(row("multi_controlled", m.n_multi_controlled,
                           4 * L * D, "==", "4LD"));
        rows.push_back(
            row("single_qubit", m.n_single_qubit, 2 * D + 2, "==", "2D+2"));
        rows.push_back(row("depth", m.depth, 4 * L * D + 2, "<=", "4LD+2"));
      }
      break;
    case Construction::Thm2: {
      const int k = index_bits(static_cast<std::size_t>(R));
      rows.push_back(row("width", m.width, 2 * D + k + 1, "==",
                         "2D+ceil(log R)+1"));
      rows.push_back(
          row("params", m.n_params, R * D * (2 * L + 1), "==", "O(RDL)"));
      if (req.native == NativeGateSet::DoubleControlledNative) {
        rows.push_back(row("multi_controlled", m.n_multi_controlled,
                           4 * R * D * L + (R > 1 ? 1 : 0), "==", "O(RDL)"));
        rows.push_back(
            row("single_qubit", m.n_single_qubit, 2 * D + 2, "==", "-"));
        rows.push_back(
            row("depth", m.depth, 4 * R * D * L + 2, "<=", "O(RDL log R)"));
      }
      break;
    }
    case Construction::Thm1: {
      const long long T = ipow(L + 1, static_cast<int>(D));
      const int k = index_bits(static_cast<std::size_t>(T));
      rows.push_back(
          row("width", m.width, D + k + 1, "==", "D+ceil(log T)+1"));
      rows.push_back(row("params", m.n_params, D * T * (L + 2) / 2, "==",
                         "D(L+1)^D(L+2)/2"));
      rows.push_back(
          row("params_bound", m.n_params, T * D * (L + 1), "<=", "TD(L+1)"));
      if (req.native == NativeGateSet::DoubleControlledNative) {
        rows.push_back(row("multi_controlled", m.n_multi_controlled,
                           D * T * (L + 1) + (is_pow2(T) ? 0 : 1), "==",
                           "O(DL^(D+1))"));
        rows.push_back(row("single_qubit", m.n_single_qubit,
                           D + 2 + (is_pow2(T) ? k : 0), "==", "-"));
        rows.push_back(row("depth", m.depth, D * T * (L + 1) + 2, "<=",
                           "O(D^2 L^(D+1) log L)"));
      }
      break;
    }
  }
  out.passed = true;
  for (const auto& r : rows) out.passed = out.passed && r.passed;
  return out;
}

void to_json(Json& j, const AuditRow& r) {
  j = {{"quantity", r.quantity}, {"measured", r.measured},
       {"formula", r.formula},   {"relation", r.relation},
       {"published", r.published},      {"passed", r.passed}};
}

void to_json(Json& j, const AuditReport& r) {
  j = {{"construction", to_string(r.request.construction)},
       {"L", r.request.L},
       {"D", r.request.D},
       {"R", r.request.R},
       {"native", to_string(r.request.native)},
       {"measured", r.measured},
       {"rows", r.rows},
       {"passed", r.passed}};
  if (!r.note.empty()) j["note"] = r.note;
}

}  // namespace qtd
