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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtd/io.hpp"
#include "qtd/trainer.hpp"

namespace qtd {

inline constexpr int kSurfaceGrid = 50;
/// (t, x) points at which trained models report their optimal control.
inline constexpr std::array<std::pair<double, double>, 5> kControlProbes{
    {{0.5, 0.5}, {0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}}};

struct ModelResult {
  ModelKind kind = ModelKind::QPINN;
  std::vector<RunLog> runs;
  /// Over the runs that completed every epoch; empty if none did.
  AggregateStats aggregate;
  int n_complete = 0;
  /// Index into runs of the completed run with the lowest final loss, -1
  /// if none completed.
  int best = -1;
  /// Mean |f - v| / v of the best run on the 50 x 50 grid.
  double best_grid_error = 0.0;
  /// Optimal control of the best run at kControlProbes; empty entries mark
  /// a degenerate second derivative.
  std::vector<std::optional<double>> best_controls;
};

struct ExperimentResult {
  RunConfig config;
  std::vector<ModelResult> models;
};

/// Worker count from QPINN_THREADS, else the hardware concurrency.
int worker_threads();

/// Trains every (model, run) pair of the config on a pool of `threads`
/// workers. Run i of every model uses seed base_seed + i.
ExperimentResult run_experiment(const RunConfig& config, int threads);

/// Row-major 50 x 50 grid over [0.01, 0.99]^2 as (t, x).
std::vector<std::pair<double, double>> surface_grid();

/// Mean relative error against analytical_v on the surface grid.
double grid_relative_error(const ModelSpec& spec,
                           std::span<const double> params,
                           const MarketParams& m);

/// True when `lower` stays strictly below `upper` over the last `window`
/// entries.
bool curve_below(std::span<const double> lower, std::span<const double> upper,
                 std::size_t window);

/// Writes the run CSVs, aggregates, final parameters, surfaces, the t = 0.5
/// slice and summary.json under config.out.
void write_experiment(const ExperimentResult& r);

}  // namespace qtd
