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

#include <Eigen/Dense>
#include <span>

#include "qtd/circuit.hpp"

namespace qtd {

inline constexpr int kMaxUnitaryWidth = 10;

/// Dense unitary of the circuit built from Kronecker products of per-qubit
/// 2x2 operators, independent of the statevector kernels. Qubit 0 is the
/// most significant index bit.
Eigen::MatrixXcd unitary_of(const Circuit& circuit,
                            std::span<const double> params = {},
                            std::span<const double> inputs = {});

/// 2x2 matrices of the single-qubit gates.
Eigen::Matrix2cd rx_matrix(double angle);
Eigen::Matrix2cd rz_matrix(double angle);

/// Real orthogonal reflection sending |0...0> to `amplitudes`.
Eigen::MatrixXd householder_preparation(std::span<const double> amplitudes);

/// max |a_ij - e^{i phi} b_ij| with phi aligned on the largest-modulus
/// entry of b.
double max_diff_up_to_phase(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b);

/// max |(U^dag U - I)_ij|.
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace qtd
