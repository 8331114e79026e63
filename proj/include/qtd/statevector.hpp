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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtd/circuit.hpp"
#include "qtd/complex.hpp"

namespace qtd {

inline constexpr int kDefaultMaxWidth = 24;

/// Dense state over `width` qubits. Qubit 0 is the most significant bit of
/// the amplitude index.
template <Scalar S>
class StateVector {
 public:
  using Amp = Cplx<S>;

  explicit StateVector(int width, int max_width = kDefaultMaxWidth)
      : width_(width) {
    if (width < 0) throw InvalidArgument("negative state width");
    if (width > max_width)
      throw SizeError("state width " + std::to_string(width) +
                      " exceeds the cap of " + std::to_string(max_width));
    amps_.assign(std::size_t{1} << width, Amp{});
    amps_[0] = Amp{S(1.0)};
  }

  int width() const { return width_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amp>& amps() const { return amps_; }
  const Amp& operator[](std::size_t i) const { return amps_[i]; }

  void apply(const Gate& g, std::span<const S> params,
             std::span<const S> inputs);

  /// Sum of squared moduli (plain scalars only meaningful as a check).
  S norm2() const {
    S n(0.0);
    for (const auto& a : amps_) n += a.norm2();
    return n;
  }

 private:
  std::size_t bit(int q) const {
    return std::size_t{1} << (width_ - 1 - q);
  }

  // 2x2 matrix [[m00, m01], [m10, m11]] on target t, restricted to indices
  // whose control bits match.
  void apply_1q(int t, const Amp& m00, const Amp& m01, const Amp& m10,
                const Amp& m11, std::size_t cmask, std::size_t cval);
  void apply_diag(int t, const Amp& d0, const Amp& d1, std::size_t cmask,
                  std::size_t cval);
  void apply_swap(int t, std::size_t cmask, std::size_t cval);
  void apply_prepare(const Gate& g, std::size_t cmask, std::size_t cval);

  int width_;
  std::vector<Amp> amps_;
};

template <Scalar S>
void StateVector<S>::apply_1q(int t, const Amp& m00, const Amp& m01,
                              const Amp& m10, const Amp& m11,
                              std::size_t cmask, std::size_t cval) {
  const std::size_t tb = bit(t);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & tb) || (i & cmask) != cval) continue;
    const Amp a0 = amps_[i];
    const Amp a1 = amps_[i | tb];
    amps_[i] = m00 * a0 + m01 * a1;
    amps_[i | tb] = m10 * a0 + m11 * a1;
  }
}

template <Scalar S>
void StateVector<S>::apply_diag(int t, const Amp& d0, const Amp& d1,
                                std::size_t cmask, std::size_t cval) {
  const std::size_t tb = bit(t);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cmask) != cval) continue;
    amps_[i] = (i & tb ? d1 : d0) * amps_[i];
  }
}

template <Scalar S>
void StateVector<S>::apply_swap(int t, std::size_t cmask, std::size_t cval) {
  const std::size_t tb = bit(t);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & tb) || (i & cmask) != cval) continue;
    std::swap(amps_[i], amps_[i | tb]);
  }
}

// Householder reflection I - 2 w w^T / (w^T w) with w = e_0 - amplitudes,
// which sends |0...0> to the amplitude vector and is its own inverse.
template <Scalar S>
void StateVector<S>::apply_prepare(const Gate& g, std::size_t cmask,
                                   std::size_t cval) {
  const auto& v = g.amplitudes;
  const std::size_t k = g.qubits.size();
  std::vector<double> w(v.size());
  double ww = 0.0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    w[r] = (r == 0 ? 1.0 : 0.0) - v[r];
    ww += w[r] * w[r];
  }
  if (ww == 0.0) return;
  std::size_t reg_mask = 0;
  std::vector<std::size_t> offset(v.size(), 0);
  for (std::size_t a = 0; a < k; ++a) reg_mask |= bit(g.qubits[a]);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t a = 0; a < k; ++a)
      if ((r >> (k - 1 - a)) & 1u) offset[r] |= bit(g.qubits[a]);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if ((base & reg_mask) || (base & cmask) != cval) continue;
    Amp dot{};
    for (std::size_t r = 0; r < v.size(); ++r)
      dot += amps_[base | offset[r]] * S(w[r]);
    const Amp scaled = dot * S(2.0 / ww);
    for (std::size_t r = 0; r < v.size(); ++r)
      amps_[base | offset[r]] -= scaled * S(w[r]);
  }
}

template <Scalar S>
void StateVector<S>::apply(const Gate& g, std::span<const S> params,
                           std::span<const S> inputs) {
  using std::cos;
  using std::sin;
  std::size_t cmask = 0, cval = 0;
  for (const auto& c : g.controls) {
    cmask |= bit(c.qubit);
    if (c.polarity == 1) cval |= bit(c.qubit);
  }
  switch (g.kind) {
    case GateKind::H: {
      const S h(0.70710678118654752440);
      apply_1q(g.qubits[0], Amp{h}, Amp{h}, Amp{h}, Amp{-h}, cmask, cval);
      return;
    }
    case GateKind::X:
      apply_swap(g.qubits[0], cmask, cval);
      return;
    case GateKind::CNOT:
      apply_swap(g.qubits[1], cmask | bit(g.qubits[0]),
                 cval | bit(g.qubits[0]));
      return;
    case GateKind::RX: {
      const S half = g.angle.eval<S>(params, inputs) * 0.5;
      const Amp c{cos(half)};
      const Amp ms{S(0.0), -sin(half)};
      apply_1q(g.qubits[0], c, ms, ms, c, cmask, cval);
      return;
    }
    case GateKind::RZ: {
      const S half = g.angle.eval<S>(params, inputs) * 0.5;
      apply_diag(g.qubits[0], unit_phase<S>(-half), unit_phase<S>(half), cmask,
                 cval);
      return;
    }
    case GateKind::RZZ: {
      const S half = g.angle.eval<S>(params, inputs) * 0.5;
      const Amp same = unit_phase<S>(-half), diff = unit_phase<S>(half);
      const std::size_t ab = bit(g.qubits[0]), bb = bit(g.qubits[1]);
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) != cval) continue;
        const bool parity = ((i & ab) != 0) != ((i & bb) != 0);
        amps_[i] = (parity ? diff : same) * amps_[i];
      }
      return;
    }
    case GateKind::PrepareAmplitudes:
      apply_prepare(g, cmask, cval);
      return;
  }
}

/// Applies the circuit to |0...0>.
template <Scalar S>
StateVector<S> run(const Circuit& circuit, std::span<const S> params,
                   std::span<const S> inputs,
                   int max_width = kDefaultMaxWidth) {
  if (params.size() != static_cast<std::size_t>(circuit.n_params()))
    throw InvalidArgument("expected " + std::to_string(circuit.n_params()) +
                          " parameters, got " + std::to_string(params.size()));
  if (inputs.size() != static_cast<std::size_t>(circuit.n_inputs()))
    throw InvalidArgument("expected " + std::to_string(circuit.n_inputs()) +
                          " inputs, got " + std::to_string(inputs.size()));
  StateVector<S> state(circuit.width(), max_width);
  for (const auto& g : circuit.gates()) state.apply(g, params, inputs);
  return state;
}

/// <Z> on qubit 0: weight of indices with the top bit clear minus the rest.
template <Scalar S>
S expect_z0(const StateVector<S>& state) {
  const std::size_t half = state.dim() / 2;
  S plus(0.0), minus(0.0);
  for (std::size_t i = 0; i < half; ++i) plus += state[i].norm2();
  for (std::size_t i = half; i < state.dim(); ++i) minus += state[i].norm2();
  return plus - minus;
}

struct ShotEstimate {
  double mean = 0.0;
  std::int64_t n_shots = 0;
  double std_error = 0.0;
};

/// Samples qubit-0 outcomes (+1 for |0>, -1 for |1>) from the exact
/// marginal of the final state.
ShotEstimate hadamard_test_shots(const Circuit& circuit,
                                 std::span<const double> params,
                                 std::span<const double> inputs,
                                 std::int64_t n_shots, std::uint64_t seed);

}  // namespace qtd
