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

#include "qtd/statevector.hpp"

#include <algorithm>
#include <cmath>

#include "qtd/random.hpp"

namespace qtd {

ShotEstimate hadamard_test_shots(const Circuit& circuit,
                                 std::span<const double> params,
                                 std::span<const double> inputs,
                                 std::int64_t n_shots, std::uint64_t seed) {
  if (n_shots < 1) throw InvalidArgument("n_shots must be >= 1");
  const auto state = run<double>(circuit, params, inputs);
  const double p_plus = std::clamp(0.5 * (1.0 + expect_z0(state)), 0.0, 1.0);
  Rng rng = make_rng(seed);
  std::int64_t plus = 0;
  for (std::int64_t s = 0; s < n_shots; ++s)
    if (uniform01(rng) < p_plus) ++plus;
  const double n = static_cast<double>(n_shots);
  ShotEstimate est;
  est.n_shots = n_shots;
  est.mean = (2.0 * static_cast<double>(plus) - n) / n;
  if (n_shots > 1) {
    const double var = std::max(0.0, (1.0 - est.mean * est.mean) * n / (n - 1));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace qtd
