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
#include "qtd/unitary.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace qtd {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat identity(int qubits) {
  const Eigen::Index n = Eigen::Index{1} << qubits;
  return Mat::Identity(n, n);
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd projector(int bit) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(bit, bit) = 1.0;
  return m;
}

// Matrix of the uncontrolled base operation on its target qubits, in the
// order the gate lists them.
Mat base_matrix(const Gate& g, double angle) {
  switch (g.kind) {
    case GateKind::H: {
      Eigen::Matrix2cd m;
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    }
    case GateKind::X:
      return pauli_x();
    case GateKind::RX:
      return rx_matrix(angle);
    case GateKind::RZ:
      return rz_matrix(angle);
    case GateKind::CNOT:
      return kron(projector(0), identity(1)) + kron(projector(1), pauli_x());
    case GateKind::RZZ:
      return std::cos(angle / 2) * identity(2) -
             cd(0, std::sin(angle / 2)) * kron(pauli_z(), pauli_z());
    case GateKind::PrepareAmplitudes:
      return householder_preparation(g.amplitudes).cast<cd>();
  }
  throw InvalidArgument("unknown gate kind");
}

// Local operator on (controls..., targets...): projector onto the firing
// pattern tensored with the base matrix, plus identity elsewhere.
Mat local_matrix(const Gate& g, double angle) {
  const Mat base = base_matrix(g, angle);
  if (g.controls.empty()) return base;
  Mat fire = Mat::Identity(1, 1);
  for (const auto& c : g.controls) fire = kron(fire, projector(c.polarity));
  const int nc = static_cast<int>(g.controls.size());
  const int nt = static_cast<int>(g.qubits.size());
  return kron(fire, base) +
         kron(identity(nc) - fire, identity(nt));
}

// Embeds a local operator on the listed wires into the full register.
Eigen::SparseMatrix<cd> embed_matrix(const Mat& local,
                                     const std::vector<int>& wires, int width) {
  const std::size_t dim = std::size_t{1} << width;
  const std::size_t k = wires.size();
  const std::size_t ldim = std::size_t{1} << k;
  std::size_t wire_mask = 0;
  for (int w : wires) wire_mask |= std::size_t{1} << (width - 1 - w);
  auto local_index = [&](std::size_t full) {
    std::size_t li = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t bit = (full >> (width - 1 - wires[a])) & 1u;
      li |= bit << (k - 1 - a);
    }
    return li;
  };
  auto full_index = [&](std::size_t rest, std::size_t li) {
    std::size_t full = rest;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t bit = (li >> (k - 1 - a)) & 1u;
      full |= bit << (width - 1 - wires[a]);
    }
    return full;
  };
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(dim * ldim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t rest = col & ~wire_mask;
    const std::size_t lc = local_index(col);
    for (std::size_t lr = 0; lr < ldim; ++lr) {
      const cd v = local(static_cast<Eigen::Index>(lr),
                         static_cast<Eigen::Index>(lc));
      if (v != cd(0.0))
        trips.emplace_back(static_cast<int>(full_index(rest, lr)),
                           static_cast<int>(col), v);
    }
  }
  Eigen::SparseMatrix<cd> m(static_cast<Eigen::Index>(dim),
                            static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

Eigen::Matrix2cd rx_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  Eigen::Matrix2cd m;
  m << c, cd(0, -s), cd(0, -s), c;
  return m;
}

Eigen::Matrix2cd rz_matrix(double angle) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -angle / 2);
  m(1, 1) = std::polar(1.0, angle / 2);
  return m;
}

Eigen::MatrixXd householder_preparation(std::span<const double> amplitudes) {
  const auto n = static_cast<Eigen::Index>(amplitudes.size());
  Eigen::VectorXd w = -Eigen::Map<const Eigen::VectorXd>(amplitudes.data(), n);
  w(0) += 1.0;
  const double ww = w.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  if (ww > 0.0) h -= 2.0 * w * w.transpose() / ww;
  return h;
}

Eigen::MatrixXcd unitary_of(const Circuit& circuit,
                            std::span<const double> params,
                            std::span<const double> inputs) {
  if (circuit.width() > kMaxUnitaryWidth)
    throw SizeError("unitary_of supports at most " +
                    std::to_string(kMaxUnitaryWidth) + " qubits, got " +
                    std::to_string(circuit.width()));
  if (params.size() != static_cast<std::size_t>(circuit.n_params()))
    throw InvalidArgument("expected " + std::to_string(circuit.n_params()) +
                          " parameters, got " + std::to_string(params.size()));
  if (inputs.size() != static_cast<std::size_t>(circuit.n_inputs()))
    throw InvalidArgument("expected " + std::to_string(circuit.n_inputs()) +
                          " inputs, got " + std::to_string(inputs.size()));
  const int width = circuit.width();
  Mat u = identity(width);
  for (const auto& g : circuit.gates()) {
    const double angle =
        g.has_angle() ? g.angle.eval<double>(params, inputs) : 0.0;
    std::vector<int> wires;
    for (const auto& c : g.controls) wires.push_back(c.qubit);
    wires.insert(wires.end(), g.qubits.begin(), g.qubits.end());
    u = embed_matrix(local_matrix(g, angle), wires, width) * u;
  }
  return u;
}

double max_diff_up_to_phase(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("matrix shapes differ");
  Eigen::Index bi = 0, bj = 0;
  b.cwiseAbs().maxCoeff(&bi, &bj);
  cd phase = 1.0;
  if (std::abs(b(bi, bj)) > 0.0 && std::abs(a(bi, bj)) > 0.0) {
    phase = a(bi, bj) / b(bi, bj);
    phase /= std::abs(phase);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace qtd
