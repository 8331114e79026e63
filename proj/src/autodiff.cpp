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

#include "qtd/autodiff.hpp"

#include <algorithm>
#include <cmath>

#include "qtd/statevector.hpp"

namespace qtd {

namespace detail {

Circuit shift_occurrence(const Circuit& circuit, std::size_t gate,
                         double delta) {
  Circuit out(circuit.width(), circuit.n_params(), circuit.n_inputs());
  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    Gate g = circuit.gates()[i];
    if (i == gate) g.angle = g.angle.shifted(delta);
    out.add(std::move(g));
  }
  return out;
}

}  // namespace detail

double parameter_shift(const Circuit& circuit, std::span<const double> params,
                       std::span<const double> inputs, int index) {
  std::function<double(const Circuit&)> g = [&](const Circuit& c) {
    return expect_z0(run<double>(c, params, inputs));
  };
  return shift_derivative(circuit, index, g);
}

std::vector<double> fd_gradient(
    const std::function<double(std::span<const double>)>& loss,
    std::span<const double> params, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be > 0");
  std::vector<double> x(params.begin(), params.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double hi = h * std::max(1.0, std::abs(xi));
    x[i] = xi + hi;
    const double fp = loss(x);
    x[i] = xi - hi;
    const double fm = loss(x);
    x[i] = xi;
    grad[i] = (fp - fm) / (2.0 * hi);
  }
  return grad;
}

}  // namespace qtd
