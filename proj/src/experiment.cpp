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

#include "qtd/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace qtd {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw Error("cannot write '" + p.string() + "'");
  return os;
}

Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("QPINN_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1)
      throw ConfigError("QPINN_THREADS must be a positive integer");
    return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::pair<double, double>> surface_grid() {
  std::vector<std::pair<double, double>> g;
  g.reserve(kSurfaceGrid * kSurfaceGrid);
  const double step = (kSampleHi - kSampleLo) / (kSurfaceGrid - 1);
  for (int i = 0; i < kSurfaceGrid; ++i)
    for (int j = 0; j < kSurfaceGrid; ++j)
      g.emplace_back(kSampleLo + i * step, kSampleLo + j * step);
  return g;
}

double grid_relative_error(const ModelSpec& spec,
                           std::span<const double> params,
                           const MarketParams& m) {
  double sum = 0.0;
  const auto grid = surface_grid();
  for (const auto& [t, x] : grid) {
    const double v = analytical_v(m, t, x);
    sum += std::abs(model_value(spec, params, t, x) - v) / std::abs(v);
  }
  return sum / static_cast<double>(grid.size());
}

bool curve_below(std::span<const double> lower, std::span<const double> upper,
                 std::size_t window) {
  if (lower.size() != upper.size() || window > lower.size() || window == 0)
    throw InvalidArgument("curve_below needs equal lengths and a valid window");
  for (std::size_t e = lower.size() - window; e < lower.size(); ++e)
    if (!(lower[e] < upper[e])) return false;
  return true;
}

ExperimentResult run_experiment(const RunConfig& config, int threads) {
  config.validate();
  if (threads < 1) throw InvalidArgument("need at least one worker");
  ExperimentResult result;
  result.config = config;
  const int n_runs = config.train.n_runs;
  for (ModelKind k : config.models) {
    ModelResult mr;
    mr.kind = k;
    mr.runs.resize(n_runs);
    result.models.push_back(std::move(mr));
  }

  const fs::path out(config.out);
  std::mutex dir_mutex;
  std::atomic<std::size_t> next{0};
  const std::size_t n_jobs = result.models.size() * n_runs;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs; job = next++) {
      ModelResult& mr = result.models[job / n_runs];
      const int run = static_cast<int>(job % n_runs);
      const ModelSpec spec{mr.kind, config.output_scale};
      const std::uint64_t seed = config.train.base_seed + run;
      CheckpointFn checkpoint;
      if (config.train.checkpoint_every > 0) {
        const fs::path dir = out / std::string(to_string(mr.kind));
        {
          std::lock_guard lock(dir_mutex);
          fs::create_directories(dir);
        }
        checkpoint = [dir, seed](int epoch, const ParamVector& p) {
          auto os = open_out(dir / ("checkpoint_s" + std::to_string(seed) +
                                    "_e" + std::to_string(epoch) + ".json"));
          os << Json(p).dump(2) << '\n';
        };
      }
      try {
        mr.runs[run] = train_run(spec, config.train, config.market,
                                 config.weights, seed, checkpoint);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads =
      static_cast<int>(std::min<std::size_t>(threads, n_jobs));
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (ModelResult& mr : result.models) {
    const ModelSpec spec{mr.kind, config.output_scale};
    std::vector<RunLog> complete;
    double best_loss = 0.0;
    for (std::size_t i = 0; i < mr.runs.size(); ++i) {
      const RunLog& r = mr.runs[i];
      if (r.aborted) continue;
      complete.push_back(r);
      const double final_loss = r.losses.back().total;
      if (mr.best < 0 || final_loss < best_loss) {
        mr.best = static_cast<int>(i);
        best_loss = final_loss;
      }
    }
    mr.n_complete = static_cast<int>(complete.size());
    if (complete.empty()) continue;
    mr.aggregate = aggregate(complete);
    const auto& params = mr.runs[mr.best].final_params.values;
    mr.best_grid_error = grid_relative_error(spec, params, config.market);
    for (const auto& [t, x] : kControlProbes) {
      const DerivBundle d = model_bundle(spec, params, t, x);
      try {
        mr.best_controls.push_back(
            optimal_control(d.v_x, d.v_xx, x, config.market));
      } catch (const DegenerateControlError&) {
        mr.best_controls.push_back(std::nullopt);
      }
    }
  }
  return result;
}

void write_experiment(const ExperimentResult& r) {
  const RunConfig& cfg = r.config;
  const fs::path out(cfg.out);
  fs::create_directories(out);

  Json models = Json::array();
  for (const ModelResult& mr : r.models) {
    const std::string name(to_string(mr.kind));
    const fs::path dir = out / name;
    fs::create_directories(dir);
    Json runs = Json::array();
    for (const RunLog& run : mr.runs) {
      const std::string tag = "s" + std::to_string(run.seed);
      {
        auto os = open_out(dir / ("run_" + tag + ".csv"));
        write_run_csv(os, run);
      }
      {
        auto os = open_out(dir / ("params_" + tag + ".json"));
        os << Json(run.final_params).dump(2) << '\n';
      }
      runs.push_back(
          {{"seed", run.seed},
           {"epochs_completed", run.losses.size()},
           {"final_loss",
            run.losses.empty() ? Json(nullptr) : Json(run.losses.back())},
           {"aborted", run.aborted},
           {"abort_reason", run.abort_reason}});
    }
    Json entry = {{"model", name},
                  {"runs", runs},
                  {"n_complete", mr.n_complete}};
    if (mr.n_complete > 0) {
      auto os = open_out(dir / "aggregate.csv");
      write_aggregate_csv(os, mr.aggregate);
      Json controls = Json::array();
      for (std::size_t i = 0; i < kControlProbes.size(); ++i)
        controls.push_back({{"t", kControlProbes[i].first},
                            {"x", kControlProbes[i].second},
                            {"alpha", optional_json(mr.best_controls[i])}});
      entry["final_geomean"] = mr.aggregate.geomean.back();
      entry["final_geostd"] = mr.aggregate.geostd.back();
      entry["best_seed"] = mr.runs[mr.best].seed;
      entry["best_final_loss"] = mr.runs[mr.best].losses.back().total;
      entry["best_grid_relative_error"] = mr.best_grid_error;
      entry["best_optimal_control"] = controls;
    }
    models.push_back(entry);
  }

  // Surfaces and the t = 0.5 slice of each model's best run.
  const auto grid = surface_grid();
  std::vector<const ModelResult*> with_best;
  for (const auto& mr : r.models)
    if (mr.best >= 0) with_best.push_back(&mr);
  auto header = [&](std::ostream& os, const char* first) {
    os << first << ",analytical";
    for (const auto* mr : with_best) os << ',' << to_string(mr->kind);
    os << '\n';
  };
  auto values_at = [&](std::ostream& os, double t, double x) {
    os << format_double(analytical_v(cfg.market, t, x));
    for (const auto* mr : with_best) {
      const ModelSpec spec{mr->kind, cfg.output_scale};
      os << ','
         << format_double(model_value(
                spec, mr->runs[mr->best].final_params.values, t, x));
    }
    os << '\n';
  };
  {
    auto os = open_out(out / "surface.csv");
    header(os, "t,x");
    for (const auto& [t, x] : grid) {
      os << format_double(t) << ',' << format_double(x) << ',';
      values_at(os, t, x);
    }
  }
  {
    auto os = open_out(out / "slice_t0.5.csv");
    header(os, "x");
    const double step = (kSampleHi - kSampleLo) / (kSurfaceGrid - 1);
    for (int j = 0; j < kSurfaceGrid; ++j) {
      const double x = kSampleLo + j * step;
      os << format_double(x) << ',';
      values_at(os, 0.5, x);
    }
  }

  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const Json summary = {
      {"config", cfg},
      {"models", models},
      {"geostd_convention", "population"},
      {"metadata", {{"timestamp", stamp}}}};
  auto os = open_out(out / "summary.json");
  os << summary.dump(2) << '\n';
}

}  // namespace qtd
