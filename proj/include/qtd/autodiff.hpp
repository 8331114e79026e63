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

#include <functional>
#include <span>
#include <vector>

#include "qtd/circuit.hpp"
#include "qtd/dual.hpp"

namespace qtd {

struct Derivs {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Value, first and second derivative of f at `point`. Any other arguments
/// of the underlying function are captured by f as constants.
template <typename F>
Derivs derive2(F&& f, double point) {
  const Dual2 r = f(Dual2::variable(point));
  return {r.v, r.d1, r.d2};
}

/// Shift-rule derivative of g(circuit) with respect to parameter slot
/// `index`, where g is linear in the circuit's output state projector
/// (expectations and their input derivatives). Each occurrence of the slot
/// is shifted separately and weighted by its angle scale:
///
///   uncontrolled RX, RZ, RZZ   (g(+pi/2) - g(-pi/2)) / 2
///   controlled rotations       d+ (g(+pi/2) - g(-pi/2))
///                              - d- (g(+3pi/2) - g(-3pi/2)),
///                              d+- = (sqrt2 +- 1) / (4 sqrt2)
///
/// Controlled rotations have generator eigenvalues {0, +-1/2}, so the
/// two-term rule does not apply to them.
template <typename T>
T shift_derivative(const Circuit& circuit, int index,
                   const std::function<T(const Circuit&)>& g);

/// d <Z0> / d params[index] by the shift rule.
double parameter_shift(const Circuit& circuit, std::span<const double> params,
                       std::span<const double> inputs, int index);

/// Central differences with step h * max(1, |params_i|).
std::vector<double> fd_gradient(
    const std::function<double(std::span<const double>)>& loss,
    std::span<const double> params, double h = 1e-5);

namespace detail {
Circuit shift_occurrence(const Circuit& circuit, std::size_t gate,
                         double delta);
}  // namespace detail

template <typename T>
T shift_derivative(const Circuit& circuit, int index,
                   const std::function<T(const Circuit&)>& g) {
  if (index < 0 || index >= circuit.n_params())
    throw InvalidArgument("parameter index " + std::to_string(index) +
                          " out of range");
  constexpr double kPi = 3.14159265358979323846;
  const double sqrt2 = 1.41421356237309504880;
  const double dp = (sqrt2 + 1.0) / (4.0 * sqrt2);
  const double dm = (sqrt2 - 1.0) / (4.0 * sqrt2);
  T total{};
  bool first = true;
  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    const Gate& gate = circuit.gates()[i];
    if (!gate.has_angle() || gate.angle.kind != AngleExpr::Kind::Param ||
        gate.angle.index != index)
      continue;
    auto at = [&](double delta) {
      return g(detail::shift_occurrence(circuit, i, delta));
    };
    T term;
    if (gate.controls.empty()) {
      term = (at(kPi / 2) - at(-kPi / 2)) * (0.5 * gate.angle.scale);
    } else {
      term = (at(kPi / 2) - at(-kPi / 2)) * (dp * gate.angle.scale) -
             (at(1.5 * kPi) - at(-1.5 * kPi)) * (dm * gate.angle.scale);
    }
    if (first) {
      total = term;
      first = false;
    } else {
      total = total + term;
    }
  }
  return total;
}

}  // namespace qtd
