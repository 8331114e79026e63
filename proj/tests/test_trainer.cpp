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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qtd/autodiff.hpp"
#include "qtd/random.hpp"
#include "qtd/trainer.hpp"

using namespace qtd;

TEST_CASE("learning-rate schedule") {
  const LrSchedule s;
  CHECK(lr_at(s, 0) == doctest::Approx(1e-2).epsilon(1e-15));
  CHECK(lr_at(s, 75) == doctest::Approx(5.5e-3).epsilon(1e-14));
  CHECK(lr_at(s, 200) == 1e-3);
  CHECK(lr_at(s, 999) == 2e-4);
  CHECK(std::abs(lr_at(s, 149) - lr_at(s, 150)) < 1e-5);
  for (int e = 1; e < 150; ++e) CHECK(lr_at(s, e) < lr_at(s, e - 1));
  for (int e = 0; e < 1000; ++e) CHECK(lr_at(s, e) > 0.0);
  CHECK_THROWS_AS(lr_at(s, -1), InvalidArgument);
  CHECK_THROWS_AS(lr_at(s, 1000), InvalidArgument);
}

TEST_CASE("config validation") {
  TrainConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eps = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = TrainConfig{};
  cfg.epochs = 1001;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = TrainConfig{};
  cfg.schedule.hold_until = 100;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK(gradient_method_from_string("parameter_shift") ==
        GradientMethod::ParameterShift);
  CHECK_THROWS_AS(gradient_method_from_string("adjoint"), InvalidArgument);
}

TEST_CASE("LAMB step examples") {
  const TrainConfig cfg;
  const std::vector<std::pair<int, int>> one{{0, 1}};

  std::vector<double> w{2.0};
  LambState st;
  lamb_step(w, std::vector<double>{0.5}, st, 0.01, one, cfg);
  // u = 0.5 / (0.5 + eps), tau = 2 / u.
  CHECK(w[0] == doctest::Approx(2.0 - 2.0 * 0.01).epsilon(1e-12));

  std::vector<double> z{1.0, -3.0};
  const std::vector<std::pair<int, int>> two{{0, 2}};
  LambState st2;
  lamb_step(z, std::vector<double>{0.0, 0.0}, st2, 0.1, two, cfg);
  CHECK(z == std::vector<double>{1.0, -3.0});

  // A zero weight norm falls back to tau = 1.
  std::vector<double> zero{0.0};
  LambState st3;
  lamb_step(zero, std::vector<double>{-4.0}, st3, 0.1, one, cfg);
  CHECK(zero[0] == doctest::Approx(0.1 * 4.0 / (4.0 + 1e-6)).epsilon(1e-14));

  // Weight norms above the clamp are capped.
  std::vector<double> big{40.0};
  LambState st4;
  lamb_step(big, std::vector<double>{1.0}, st4, 0.01, one, cfg);
  CHECK(big[0] == doctest::Approx(40.0 - 0.01 * 10.0).epsilon(1e-12));

  std::vector<double> bad{1.0};
  LambState st5;
  CHECK_THROWS_AS(lamb_step(bad, std::vector<double>{NAN}, st5, 0.1, one,
                            cfg, 17),
                  TrainingAbort);
  try {
    lamb_step(bad, std::vector<double>{INFINITY}, st5, 0.1, one, cfg, 17);
  } catch (const TrainingAbort& e) {
    CHECK(e.epoch() == 17);
  }
}

TEST_CASE("LAMB update follows the gradient sign and ignores its scale") {
  const TrainConfig cfg;
  Rng rng = make_rng(1);
  const std::vector<std::pair<int, int>> groups{{0, 3}, {3, 4}};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> w(7), g(7);
    for (auto& v : w) v = uniform(rng, -2, 2);
    // |g| stays well above eps so the denominator's eps is negligible.
    for (auto& v : g) v = (uniform01(rng) < 0.5 ? -1 : 1) * uniform(rng, 0.5, 1);
    const double c = std::exp(uniform(rng, -1, 1));
    std::vector<double> g_scaled = g;
    for (int i = 3; i < 7; ++i) g_scaled[i] *= c;
    std::vector<double> a = w, b = w;
    LambState sa, sb;
    const double lr = 0.01;
    lamb_step(a, g, sa, lr, groups, cfg);
    lamb_step(b, g_scaled, sb, lr, groups, cfg);
    for (int i = 0; i < 7; ++i) {
      CHECK(std::abs((a[i] - w[i]) - (b[i] - w[i])) < 10 * cfg.eps * lr);
      CHECK(std::signbit(a[i] - w[i]) != std::signbit(g[i]));
    }
  }
}

TEST_CASE("LAMB with moments") {
  TrainConfig cfg;
  cfg.beta1 = 0.9;
  cfg.beta2 = 0.999;
  std::vector<double> w{1.0};
  LambState st;
  const std::vector<std::pair<int, int>> one{{0, 1}};
  lamb_step(w, std::vector<double>{2.0}, st, 0.1, one, cfg);
  CHECK(st.m[0] == doctest::Approx(0.2));
  CHECK(st.v[0] == doctest::Approx(0.004));
  // u = 0.2 / sqrt(0.004) > 0 with tau = 1 / u, so the step is lr.
  CHECK(w[0] == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("frozen analytical model keeps zero loss") {
  const MarketParams m;
  const LossWeights w;
  const CollocationSet c = sample_collocation(0);
  const ModelHandle exact{
      [&](double t, double x) { return analytical_bundle(m, t, x); },
      [&](double t, double x) { return analytical_v(m, t, x); }};
  TrainConfig cfg;
  cfg.epochs = 5;
  const LossFn loss = [&](std::span<const double>) {
    return total_loss(exact, c, w, m);
  };
  const RunLog log =
      optimize(ModelKind::Counterpart, std::vector<double>(6, 0.3), loss, cfg,
               0);
  REQUIRE(log.losses.size() == 5);
  for (const auto& l : log.losses) CHECK(l.total < 1e-12);
  CHECK(log.final_params.values == std::vector<double>(6, 0.3));
}

TEST_CASE("training is deterministic and makes progress") {
  const MarketParams m;
  const LossWeights w;
  TrainConfig cfg;
  cfg.epochs = 60;
  for (ModelKind kind : {ModelKind::QuantumInspired, ModelKind::Counterpart,
                         ModelKind::FullyConnected}) {
    const ModelSpec spec{kind};
    if (kind == ModelKind::FullyConnected) cfg.epochs = 10;
    const RunLog a = train_run(spec, cfg, m, w, 3);
    const RunLog b = train_run(spec, cfg, m, w, 3);
    INFO(to_string(kind));
    CHECK_FALSE(a.aborted);
    REQUIRE(a.losses.size() == static_cast<std::size_t>(cfg.epochs));
    for (std::size_t e = 0; e < a.losses.size(); ++e) {
      CHECK(a.losses[e].total == b.losses[e].total);
      CHECK(a.losses[e].total ==
            a.losses[e].l_d + a.losses[e].l_1b + a.losses[e].l_2b);
    }
    CHECK(a.final_params.values == b.final_params.values);
    CHECK(a.losses.back().total < a.losses.front().total);
    CHECK(a.lr.front() == doctest::Approx(1e-2).epsilon(1e-15));
  }
}

TEST_CASE("layer-cached FC gradient equals plain central differences") {
  const MarketParams m;
  const LossWeights w;
  const ModelSpec spec{ModelKind::FullyConnected};
  const CollocationSet c = sample_collocation(2, 10, 10);
  const ParamVector p = init_params(ModelKind::FullyConnected, 2);
  const auto fast = fc_fd_gradient(spec, p.values, c, w, m);
  const auto plain = fd_gradient(
      [&](std::span<const double> q) {
        return model_loss(spec, q, c, w, m).total;
      },
      p.values);
  CHECK(fast == plain);
}

TEST_CASE("shift-rule loss gradient matches finite differences") {
  const MarketParams m;
  const LossWeights w;
  for (ModelKind kind : {ModelKind::QPINN, ModelKind::QuantumInspired}) {
    const ModelSpec spec{kind};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const CollocationSet c = sample_collocation(seed, 12, 12);
      ParamVector p = init_params(kind, seed, {std::numbers::pi, 0.1});
      if (kind == ModelKind::QPINN) p.values[kQpinnLambdaSlot] = 0.4;
      const auto shift = shift_loss_gradient(spec, p.values, c, w, m);
      const auto fd = fd_gradient(
          [&](std::span<const double> q) {
            return model_loss(spec, q, c, w, m).total;
          },
          p.values);
      double scale = 0.0;
      for (double g : fd) scale = std::max(scale, std::abs(g));
      for (std::size_t i = 0; i < fd.size(); ++i)
        CHECK(std::abs(shift[i] - fd[i]) < 1e-4 * std::max(1.0, scale));
    }
  }
  CHECK_THROWS_AS(shift_loss_gradient(ModelSpec{ModelKind::Counterpart},
                                      std::vector<double>(6), {}, w, m),
                  InvalidArgument);
}

TEST_CASE("parameter-shift training matches finite-difference training") {
  const MarketParams m;
  const LossWeights w;
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.init.angle_range = 1.0;
  const ModelSpec spec{ModelKind::QuantumInspired};
  const RunLog fd = train_run(spec, cfg, m, w, 4);
  cfg.gradient = GradientMethod::ParameterShift;
  const RunLog ps = train_run(spec, cfg, m, w, 4);
  for (int e = 0; e < 5; ++e)
    CHECK(ps.losses[e].total ==
          doctest::Approx(fd.losses[e].total).epsilon(1e-6));
  CHECK_THROWS_AS(
      train_run(ModelSpec{ModelKind::Counterpart}, cfg, m, w, 4), ConfigError);
}

TEST_CASE("aggregate") {
  auto run_with = [](std::vector<double> totals) {
    RunLog r;
    for (double t : totals) r.losses.push_back({0, 0, 0, t});
    return r;
  };
  const std::vector<RunLog> same{run_with({3, 2}), run_with({3, 2})};
  const AggregateStats s = aggregate(same);
  CHECK(s.geomean[0] == doctest::Approx(3));
  CHECK(s.geomean[1] == doctest::Approx(2));
  CHECK(s.geostd[0] == 1.0);

  const std::vector<RunLog> pair{run_with({1e-2}), run_with({1e-4})};
  const AggregateStats p = aggregate(pair);
  CHECK(p.geomean[0] == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(p.geostd[0] == doctest::Approx(10.0).epsilon(1e-12));
  for (double v : p.geostd) CHECK(v >= 1.0);

  CHECK_THROWS_AS(aggregate(std::vector<RunLog>{}), AggregationError);
  const std::vector<RunLog> ragged{run_with({1, 2}), run_with({1})};
  CHECK_THROWS_AS(aggregate(ragged), AggregationError);
  const std::vector<RunLog> zero{run_with({0.0})};
  CHECK_THROWS_AS(aggregate(zero), AggregationError);
}
