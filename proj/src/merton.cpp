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

#include "qtd/merton.hpp"

#include <cmath>
#include <string>

#include "qtd/random.hpp"

namespace qtd {

void MarketParams::validate() const {
  if (!(mu > r)) throw InvalidArgument("market needs mu > r");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidArgument("market needs 0 < gamma < 1");
  if (!(sigma > 0.0)) throw InvalidArgument("market needs sigma > 0");
  if (!(T > 0.0)) throw InvalidArgument("market needs T > 0");
}

void LossWeights::validate() const {
  if (!(w_d > 0.0 && w_1 > 0.0 && w_2 > 0.0))
    throw InvalidArgument("loss weights must be positive");
}

double k_constant(const MarketParams& m) {
  if (m.gamma == 1.0) throw DomainError("k is undefined for gamma = 1");
  return 0.5 * m.gamma / (m.gamma - 1.0) * m.sharpe2() - m.r * m.gamma;
}

DerivBundle analytical_bundle(const MarketParams& m, double t, double x) {
  if (!(x > 0.0)) throw DomainError("the value function needs wealth x > 0");
  const double k = k_constant(m);
  const double e = std::exp(-k * (m.T - t));
  const double g = m.gamma;
  DerivBundle d;
  d.v = e * std::pow(x, g) / g;
  d.v_t = k * d.v;
  d.v_x = e * std::pow(x, g - 1.0);
  d.v_xx = e * (g - 1.0) * std::pow(x, g - 2.0);
  return d;
}

double hjb_residual(const DerivBundle& d, double x, const MarketParams& m) {
  return d.v_t * d.v_xx + d.v_x * d.v_xx * m.r * x -
         0.5 * m.sharpe2() * d.v_x * d.v_x;
}

double optimal_control(double v_x, double v_xx, double x,
                       const MarketParams& m) {
  if (v_xx == 0.0 || x == 0.0)
    throw DegenerateControlError("optimal control needs v_xx != 0 and x != 0");
  return -((m.mu - m.r) / (m.sigma * m.sigma)) * v_x / (v_xx * x);
}

CollocationSet sample_collocation(std::uint64_t seed, int n_d, int n_b) {
  if (n_d < 1 || n_b < 1)
    throw InvalidArgument("collocation counts must be >= 1");
  Rng rng = make_rng(seed, 1);
  CollocationSet c;
  c.seed = seed;
  c.interior.reserve(n_d);
  for (int i = 0; i < n_d; ++i) {
    const double t = uniform(rng, kSampleLo, kSampleHi);
    const double x = uniform(rng, kSampleLo, kSampleHi);
    c.interior.emplace_back(t, x);
  }
  for (int i = 0; i < n_b; ++i)
    c.terminal.push_back(uniform(rng, kSampleLo, kSampleHi));
  for (int i = 0; i < n_b; ++i)
    c.lateral.push_back(uniform(rng, kSampleLo, kSampleHi));
  return c;
}

LossBreakdown loss_from_outputs(std::span<const DerivBundle> interior,
                                std::span<const double> terminal,
                                std::span<const double> lateral,
                                const CollocationSet& c, const LossWeights& w,
                                const MarketParams& m) {
  if (interior.size() != c.interior.size() ||
      terminal.size() != c.terminal.size() ||
      lateral.size() != c.lateral.size())
    throw InvalidArgument("model outputs do not match the collocation set");
  const double k = k_constant(m);
  LossBreakdown l;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const double res = hjb_residual(interior[i], c.interior[i].second, m);
    l.l_d += res * res;
  }
  for (std::size_t i = 0; i < terminal.size(); ++i) {
    const double target = std::pow(c.terminal[i], m.gamma) / m.gamma;
    const double e = terminal[i] - target;
    l.l_1b += e * e;
  }
  for (std::size_t i = 0; i < lateral.size(); ++i) {
    const double target = std::exp(-k * (m.T - c.lateral[i])) / m.gamma;
    const double e = lateral[i] - target;
    l.l_2b += e * e;
  }
  l.l_d *= w.w_d / static_cast<double>(interior.size());
  l.l_1b *= w.w_1 / static_cast<double>(terminal.size());
  l.l_2b *= w.w_2 / static_cast<double>(lateral.size());
  l.total = l.l_d + l.l_1b + l.l_2b;
  return l;
}

LossBreakdown total_loss(const ModelHandle& model, const CollocationSet& c,
                         const LossWeights& w, const MarketParams& m) {
  std::vector<DerivBundle> interior;
  std::vector<double> terminal, lateral;
  interior.reserve(c.interior.size());
  for (const auto& [t, x] : c.interior) interior.push_back(model.bundle(t, x));
  for (double x : c.terminal) terminal.push_back(model.value(m.T, x));
  for (double t : c.lateral) lateral.push_back(model.value(t, 1.0));
  return loss_from_outputs(interior, terminal, lateral, c, w, m);
}

}  // namespace qtd
