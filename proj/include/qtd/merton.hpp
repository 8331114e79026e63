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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qtd/dual.hpp"

namespace qtd {

struct MarketParams {
  double r = 0.02;
  double T = 1.0;
  double gamma = 0.95;
  double mu = 0.0219;
  double sigma = 0.2;

  /// mu > r, 0 < gamma < 1, sigma > 0, T > 0; throws InvalidArgument.
  void validate() const;
  /// ((mu - r) / sigma)^2.
  double sharpe2() const {
    const double s = (mu - r) / sigma;
    return s * s;
  }
};

struct LossWeights {
  double w_d = 1.0;
  double w_1 = 1.0;
  double w_2 = 5.0;

  void validate() const;
};

/// k = gamma / (2 (gamma - 1)) ((mu - r) / sigma)^2 - r gamma.
double k_constant(const MarketParams& m);

/// exp(-k (T - t)) x^gamma / gamma.
template <Scalar S>
S analytical_v(const MarketParams& m, const S& t, const S& x) {
  using std::exp;
  using std::pow;
  if (!(value_of(x) > 0.0))
    throw DomainError("the value function needs wealth x > 0");
  const double k = k_constant(m);
  return exp((t - m.T) * k) * pow(x, m.gamma) / m.gamma;
}

struct DerivBundle {
  double v = 0.0;
  double v_t = 0.0;
  double v_x = 0.0;
  double v_xx = 0.0;
};

/// Closed-form derivatives of analytical_v.
DerivBundle analytical_bundle(const MarketParams& m, double t, double x);

/// v_t v_xx + v_x v_xx r x - ((mu - r) / sigma)^2 v_x^2 / 2.
double hjb_residual(const DerivBundle& d, double x, const MarketParams& m);

/// -((mu - r) / sigma^2) v_x / (v_xx x).
double optimal_control(double v_x, double v_xx, double x,
                       const MarketParams& m);

struct CollocationSet {
  std::vector<std::pair<double, double>> interior;  // (t, x)
  std::vector<double> terminal;                     // x at t = T
  std::vector<double> lateral;                      // t at x = 1
  std::uint64_t seed = 0;
};

inline constexpr double kSampleLo = 0.01;
inline constexpr double kSampleHi = 0.99;

CollocationSet sample_collocation(std::uint64_t seed, int n_d = 50,
                                  int n_b = 50);

struct LossBreakdown {
  double l_d = 0.0;
  double l_1b = 0.0;
  double l_2b = 0.0;
  double total = 0.0;
};

/// Model evaluated at collocation points: derivative bundles at interior
/// points, plain values at the boundary.
struct ModelHandle {
  std::function<DerivBundle(double t, double x)> bundle;
  std::function<double(double t, double x)> value;
};

/// Weighted mean-square PDE residual and boundary mismatches from
/// precomputed model outputs, ordered like the collocation set.
LossBreakdown loss_from_outputs(std::span<const DerivBundle> interior,
                                std::span<const double> terminal,
                                std::span<const double> lateral,
                                const CollocationSet& c, const LossWeights& w,
                                const MarketParams& m);

LossBreakdown total_loss(const ModelHandle& model, const CollocationSet& c,
                         const LossWeights& w, const MarketParams& m);

}  // namespace qtd
