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
#include <vector>

#include "qtd/circuit.hpp"
#include "qtd/poly.hpp"

namespace qtd {

/// A circuit together with concrete values for its parameter slots and the
/// factor Lambda with p(x) = Lambda * <Z0>.
struct BoundCircuit {
  Circuit circuit;
  std::vector<double> params;
  double lambda = 1.0;
};

/// Three-qubit Hadamard test (q0 ancilla, q1 parity selector, q2 chain).
/// The L-angle chain (slots 0..L-1) fires on q1 = |0>, the (L+1)-angle
/// chain (slots L..2L) on q1 = |1>, both controlled by q0.
Circuit univariate_model_circuit(int L);
BoundCircuit build_univariate_model(std::span<const double> theta1,
                                    std::span<const double> theta2);

/// Rank-1 tensor-decomposed model over D variables: q0 ancilla, then per
/// variable j a parity selector q_{2j+1} and a chain qubit q_{2j+2} fed
/// with input j. Slots per variable: L angles of the low branch, then L+1
/// of the high branch.
Circuit rank1_circuit(int D, int L);
BoundCircuit build_rank1_circuit(std::span<const AnglePair> angles);

/// Tensor-decomposed circuit: q0 ancilla, ceil(log2 R) index qubits
/// prepared with amplitudes sqrt(|lambda_r| / Lambda), then the rank-1
/// register. Every rotation of term r is controlled by q0, the index
/// pattern r and its parity selector.
Circuit td_circuit(int R, int D, int L, std::span<const double> lambdas);
BoundCircuit build_td_circuit(const TdPoly& p,
                              const SynthesisOptions& opts = {});

/// Linear combination of monomial blocks: q0 ancilla, ceil(log2 T) index
/// qubits in uniform superposition over the first T patterns, and one
/// chain qubit per variable. Monomial i uses chains with n_ij encoding
/// gates, so it owns sum_j (n_ij + 1) slots.
Circuit lcu_circuit(const std::vector<std::vector<int>>& exponents, int D);
BoundCircuit build_lcu_multivariate(const MonomialList& monomials, int D,
                                    int L, const SynthesisOptions& opts = {});

/// Every multi-index of [0, L]^D in lexicographic order.
std::vector<std::vector<int>> full_grid(int D, int L);

/// Bits needed to index `count` items (0 for a single item).
int index_bits(std::size_t count);

}  // namespace qtd
