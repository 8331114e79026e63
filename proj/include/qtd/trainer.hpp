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
#include <string>
#include <utility>
#include <vector>

#include "qtd/merton.hpp"
#include "qtd/models.hpp"

namespace qtd {

/// Cosine decay from lr_max to lr_min over [0, cosine_epochs), lr_min until
/// hold_until, then tail_lr until total_epochs.
struct LrSchedule {
  double lr_max = 1e-2;
  double lr_min = 1e-3;
  int cosine_epochs = 150;
  int hold_until = 250;
  double tail_lr = 2e-4;
  int total_epochs = 1000;

  void validate() const;
};

/// Throws InvalidArgument outside [0, total_epochs).
double lr_at(const LrSchedule& s, int epoch);

enum class GradientMethod { FiniteDifference, ParameterShift };

std::string_view to_string(GradientMethod g);
GradientMethod gradient_method_from_string(std::string_view name);

struct TrainConfig {
  int epochs = 1000;
  LrSchedule schedule;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double weight_decay = 0.0;
  double eps = 1e-6;
  /// Upper clamp on the weight norm inside the trust ratio.
  double trust_clamp = 10.0;
  int n_runs = 10;
  std::uint64_t base_seed = 0;
  GradientMethod gradient = GradientMethod::FiniteDifference;
  double fd_step = 1e-5;
  int n_interior = 50;
  int n_boundary = 50;
  InitOptions init;
  /// Checkpoint callback period in epochs; 0 disables checkpoints.
  int checkpoint_every = 0;

  void validate() const;
};

/// First and second moment buffers, sized on first use.
struct LambState {
  std::vector<double> m;
  std::vector<double> v;
};

/// One LAMB update per group (offset, length):
///   m = b1 m + (1 - b1) g,  v = b2 v + (1 - b2) g^2
///   u = m / (sqrt(v) + eps) + weight_decay w
///   tau = min(|w|, trust_clamp) / |u|, or 1 when either norm is zero
///   w -= lr tau u
/// Non-finite gradients raise TrainingAbort tagged with `epoch`.
void lamb_step(std::span<double> params, std::span<const double> grads,
               LambState& state, double lr,
               std::span<const std::pair<int, int>> groups,
               const TrainConfig& cfg, int epoch = 0);

struct RunLog {
  ModelKind kind = ModelKind::QPINN;
  std::uint64_t seed = 0;
  std::vector<LossBreakdown> losses;  // at the start of each epoch
  std::vector<double> lr;
  std::vector<double> wall_ms;
  ParamVector final_params;
  bool aborted = false;
  std::string abort_reason;
};

using LossFn = std::function<LossBreakdown(std::span<const double>)>;
using GradFn = std::function<std::vector<double>(std::span<const double>)>;
using CheckpointFn = std::function<void(int epoch, const ParamVector&)>;

/// Optimizes `params` against `loss` with LAMB. The gradient defaults to
/// central differences of the total loss.
RunLog optimize(ModelKind kind, std::vector<double> params, const LossFn& loss,
                const TrainConfig& cfg, std::uint64_t seed,
                const GradFn& grad = {}, const CheckpointFn& checkpoint = {});

/// Samples the collocation set and initial parameters from `seed`, then
/// trains. Aborts are recorded in the log rather than thrown.
RunLog train_run(const ModelSpec& spec, const TrainConfig& cfg,
                 const MarketParams& m, const LossWeights& w,
                 std::uint64_t seed, const CheckpointFn& checkpoint = {});

/// Exact gradient of model_loss for the quantum kinds: the shift rule on
/// the QPINN circuit (lambda pinned to 0 for the quantum-inspired model)
/// gives the parameter derivatives of every model output, which the chain
/// rule combines with the loss derivatives.
std::vector<double> shift_loss_gradient(const ModelSpec& spec,
                                        std::span<const double> params,
                                        const CollocationSet& c,
                                        const LossWeights& w,
                                        const MarketParams& m);

struct AggregateStats {
  std::vector<double> geomean;
  /// exp of the population standard deviation of log losses.
  std::vector<double> geostd;
};

/// Per-epoch geometric statistics of the total loss. Throws
/// AggregationError on an empty input, ragged runs or a loss <= 0.
AggregateStats aggregate(std::span<const RunLog> runs);

}  // namespace qtd
