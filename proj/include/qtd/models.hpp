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
#include <string_view>
#include <utility>
#include <vector>

#include "qtd/complex.hpp"
#include "qtd/constructions.hpp"
#include "qtd/merton.hpp"
#include "qtd/poly.hpp"
#include "qtd/statevector.hpp"

namespace qtd {

enum class ModelKind { QPINN, QuantumInspired, Counterpart, FullyConnected };

/// "qpinn", "quantum_inspired", "counterpart", "fully_connected".
std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// 7, 6, 6 and 481.
int param_count(ModelKind kind);

struct ModelSpec {
  ModelKind kind = ModelKind::QPINN;
  double output_scale = 10.0;

  int n_params() const { return param_count(kind); }
};

/// Parameter layouts:
///   QPINN            [x: low, high0, high1 | t: low, high0, high1 | lambda]
///   QuantumInspired  the first six QPINN entries
///   Counterpart      [p1 coeffs (3) | p2 coeffs (3)], ascending powers,
///                    p1 acts on x and p2 on t
///   FullyConnected   per layer the weight matrix (row-major, out x in)
///                    followed by its bias; the input vector is (t, x)
struct ParamVector {
  ModelKind kind = ModelKind::QPINN;
  std::vector<double> values;

  /// Throws InvalidArgument on a length mismatch.
  void validate() const;
};

inline constexpr int kFcHidden = 10;
inline constexpr int kFcLayers = 5;

/// Five-qubit QPINN circuit with inputs (x, t): the rank-1 model for D = 2,
/// L = 1 followed by RZZ(lambda) on (q2, q3) controlled by q0, then the
/// closing Hadamard. Slot 6 holds lambda.
inline constexpr int kQpinnLambdaSlot = 6;
const Circuit& qpinn_circuit();
BoundCircuit qpinn_build(std::span<const double> params);

namespace detail {

void check_params(ModelKind kind, std::span<const double> params);

template <Scalar S>
std::vector<S> lift(std::span<const double> values) {
  return std::vector<S>(values.begin(), values.end());
}

// (a_low + a_high) / 2 for one variable of the rank-1 model.
template <Scalar S>
Cplx<S> branch_average(std::span<const double> theta, const S& x) {
  const std::vector<S> th = lift<S>(theta);
  const Cplx<S> low = qsp_amplitude<S>(std::span<const S>(th).first(1), x);
  const Cplx<S> high = qsp_amplitude<S>(std::span<const S>(th).subspan(1), x);
  return (low + high) * S(0.5);
}

template <Scalar S>
S fc_core(std::span<const double> p, const S& t, const S& x) {
  using std::tanh;
  std::vector<S> a{t, x};
  std::size_t off = 0;
  for (int layer = 0; layer <= kFcLayers; ++layer) {
    const std::size_t in = a.size();
    const std::size_t out = layer == kFcLayers ? 1 : kFcHidden;
    std::vector<S> z(out);
    for (std::size_t o = 0; o < out; ++o) {
      S acc(0.0);
      for (std::size_t i = 0; i < in; ++i) acc += a[i] * p[off + o * in + i];
      z[o] = acc + p[off + out * in + o];
    }
    off += out * in + out;
    if (layer < kFcLayers)
      for (auto& v : z) v = tanh(v);
    a = std::move(z);
  }
  return a[0];
}

}  // namespace detail

/// Model output before the output scale.
template <Scalar S>
S model_core(ModelKind kind, std::span<const double> params, const S& t,
             const S& x) {
  detail::check_params(kind, params);
  switch (kind) {
    case ModelKind::QPINN: {
      const std::vector<S> p = detail::lift<S>(params);
      const std::vector<S> in{x, t};
      return expect_z0(run<S>(qpinn_circuit(), p, in));
    }
    case ModelKind::QuantumInspired: {
      const Cplx<S> ax = detail::branch_average<S>(params.first(3), x);
      const Cplx<S> at = detail::branch_average<S>(params.subspan(3, 3), t);
      return (ax * at).re;
    }
    case ModelKind::Counterpart: {
      const S p1 = params[0] + x * (params[1] + x * params[2]);
      const S p2 = params[3] + t * (params[4] + t * params[5]);
      return p1 * p2;
    }
    case ModelKind::FullyConnected:
      return detail::fc_core<S>(params, t, x);
  }
  return S(0.0);
}

double model_value(const ModelSpec& spec, std::span<const double> params,
                   double t, double x);

/// Value and the derivatives entering the HJB residual, by two dual passes
/// (one seeded along x, one along t).
DerivBundle model_bundle(const ModelSpec& spec,
                         std::span<const double> params, double t, double x);

/// Batched fully connected evaluation; rows of `points` are (t, x). When
/// `bundles` is non-null it receives derivative bundles, otherwise only
/// `values` is filled.
void fc_evaluate(std::span<const double> params,
                 std::span<const std::pair<double, double>> points,
                 std::vector<double>* values,
                 std::vector<DerivBundle>* bundles, double output_scale);

/// Central-difference gradient of model_loss for a fully connected model,
/// bit-identical to fd_gradient over model_loss. Activations below the
/// perturbed layer are computed once and reused.
std::vector<double> fc_fd_gradient(const ModelSpec& spec,
                                   std::span<const double> params,
                                   const CollocationSet& c,
                                   const LossWeights& w, const MarketParams& m,
                                   double h = 1e-5);

ModelHandle make_handle(const ModelSpec& spec, std::vector<double> params);

/// Loss over a collocation set; fully connected models use the batched
/// path.
LossBreakdown model_loss(const ModelSpec& spec, std::span<const double> params,
                         const CollocationSet& c, const LossWeights& w,
                         const MarketParams& m);

struct InitOptions {
  /// Half-width of the uniform draw for quantum rotation angles.
  double angle_range = 0.1;
  /// Half-width of the uniform draw for counterpart coefficients.
  double coeff_range = 0.1;
};

/// Deterministic per seed. Quantum angles are U(-angle_range, angle_range)
/// with lambda = 0, counterpart coefficients U(-coeff_range, coeff_range);
/// fully connected weights are Glorot uniform with zero biases.
ParamVector init_params(ModelKind kind, std::uint64_t seed,
                        const InitOptions& opts = {});

/// LAMB groups as (offset, length), one per logical tensor.
std::vector<std::pair<int, int>> param_groups(ModelKind kind);

}  // namespace qtd
