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
#include <vector>

#include "qtd/models.hpp"
#include "qtd/random.hpp"
#include "qtd/unitary.hpp"

using namespace qtd;

namespace {

constexpr ModelKind kAll[] = {ModelKind::QPINN, ModelKind::QuantumInspired,
                              ModelKind::Counterpart,
                              ModelKind::FullyConnected};

std::vector<double> random_params(ModelKind kind, Rng& rng) {
  std::vector<double> p(param_count(kind));
  const double r = kind == ModelKind::FullyConnected ? 0.6 : 3.0;
  for (auto& v : p) v = uniform(rng, -r, r);
  return p;
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("parameter counts and names") {
  CHECK(param_count(ModelKind::QPINN) == 7);
  CHECK(param_count(ModelKind::QuantumInspired) == 6);
  CHECK(param_count(ModelKind::Counterpart) == 6);
  CHECK(param_count(ModelKind::FullyConnected) ==
        (2 * 10 + 10) + 4 * (10 * 10 + 10) + (10 * 1 + 1));
  for (ModelKind k : kAll) CHECK(model_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(model_kind_from_string("mlp"), InvalidArgument);
  ParamVector pv{ModelKind::QPINN, std::vector<double>(6)};
  CHECK_THROWS_AS(pv.validate(), InvalidArgument);
}

TEST_CASE("QPINN circuit shape") {
  const Circuit& c = qpinn_circuit();
  CHECK(c.width() == 5);
  CHECK(c.n_params() == 7);
  CHECK(c.n_inputs() == 2);
  const Gate& zz = c.gates()[c.size() - 2];
  CHECK(zz.kind == GateKind::RZZ);
  CHECK(zz.qubits == std::vector<int>{2, 3});
  CHECK(zz.controls == std::vector<Control>{{0, 1}});
  CHECK(c.gates().back() == Gate::h(0));
  CHECK_THROWS_AS(qpinn_build(std::vector<double>(6)), InvalidArgument);
}

TEST_CASE("QPINN at lambda = 0 has the rank-1 unitary") {
  Rng rng = make_rng(1);
  const Circuit rank1 = rank1_circuit(2, 1);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> p = random_params(ModelKind::QPINN, rng);
    p[kQpinnLambdaSlot] = 0.0;
    const std::vector<double> in{uniform(rng, -1, 1), uniform(rng, -1, 1)};
    const auto u = unitary_of(qpinn_circuit(), p, in);
    const auto v = unitary_of(rank1, std::span(p).first(6), in);
    CHECK((u - v).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("dequantization identity") {
  Rng rng = make_rng(2);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<double> p = random_params(ModelKind::QPINN, rng);
    p[kQpinnLambdaSlot] = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = uniform(rng, -1, 1), x = uniform(rng, -1, 1);
      const double q = model_core<double>(ModelKind::QPINN, p, t, x);
      const double qi = model_core<double>(ModelKind::QuantumInspired,
                                           std::span(p).first(6), t, x);
      worst = std::max(worst, std::abs(q - qi));
      CHECK(std::abs(q) <= 1.0 + 1e-12);
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("the entangler changes the QPINN output") {
  std::vector<double> p{0.3, -0.4, 1.1, 0.2, 0.7, -0.5, 0.0};
  const double base = model_core<double>(ModelKind::QPINN, p, 0.3, 0.6);
  p[kQpinnLambdaSlot] = 0.9;
  CHECK(std::abs(model_core<double>(ModelKind::QPINN, p, 0.3, 0.6) - base) >
        1e-3);
}

TEST_CASE("model examples") {
  const ModelSpec cp{ModelKind::Counterpart};
  const std::vector<double> p{0, 1, 0, 1, 0, 0};
  for (double t : {0.1, 0.5, 0.9})
    CHECK(model_value(cp, p, t, 0.37) == doctest::Approx(3.7).epsilon(1e-15));

  const ModelSpec fc{ModelKind::FullyConnected};
  const std::vector<double> zeros(481, 0.0);
  const DerivBundle d = model_bundle(fc, zeros, 0.4, 0.6);
  CHECK(d.v == 0.0);
  CHECK(d.v_t == 0.0);
  CHECK(d.v_x == 0.0);
  CHECK(d.v_xx == 0.0);

  // Zero angles: each variable contributes (1 + x + i sqrt(1 - x^2)) / 2.
  const ModelSpec qi{ModelKind::QuantumInspired};
  const double expected =
      2.5 * (1.6 * 1.2 - std::sqrt(1 - 0.36) * std::sqrt(1 - 0.04));
  CHECK(model_value(qi, std::vector<double>(6, 0.0), 0.2, 0.6) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("dual derivatives match finite differences") {
  Rng rng = make_rng(3);
  const double h = 1e-4;
  for (ModelKind kind : kAll) {
    const ModelSpec spec{kind};
    double worst = 0.0;
    for (int draw = 0; draw < 5; ++draw) {
      const std::vector<double> p = random_params(kind, rng);
      for (int i = 0; i < 10; ++i) {
        const double t = uniform(rng, 0.05, 0.95), x = uniform(rng, 0.05, 0.95);
        const DerivBundle d = model_bundle(spec, p, t, x);
        auto f = [&](double tt, double xx) {
          return model_value(spec, p, tt, xx);
        };
        const double ft = (f(t + h, x) - f(t - h, x)) / (2 * h);
        const double fx = (f(t, x + h) - f(t, x - h)) / (2 * h);
        const double fxx =
            (f(t, x + h) - 2 * f(t, x) + f(t, x - h)) / (h * h);
        CHECK(d.v == doctest::Approx(f(t, x)).epsilon(1e-14));
        worst = std::max({worst, rel_err(d.v_t, ft), rel_err(d.v_x, fx),
                          rel_err(d.v_xx, fxx)});
      }
    }
    INFO(to_string(kind));
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("batched fully connected path matches the scalar path") {
  Rng rng = make_rng(4);
  const ModelSpec fc{ModelKind::FullyConnected};
  const std::vector<double> p = random_params(ModelKind::FullyConnected, rng);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 40; ++i)
    pts.emplace_back(uniform(rng, 0, 1), uniform(rng, 0, 1));
  std::vector<double> values;
  std::vector<DerivBundle> bundles;
  fc_evaluate(p, pts, &values, &bundles, fc.output_scale);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const DerivBundle d = model_bundle(fc, p, pts[i].first, pts[i].second);
    CHECK(values[i] == doctest::Approx(d.v).epsilon(1e-13));
    CHECK(bundles[i].v_t == doctest::Approx(d.v_t).epsilon(1e-12));
    CHECK(bundles[i].v_x == doctest::Approx(d.v_x).epsilon(1e-12));
    CHECK(bundles[i].v_xx == doctest::Approx(d.v_xx).epsilon(1e-12));
  }
  const MarketParams m;
  const CollocationSet c = sample_collocation(5);
  const LossBreakdown batched = model_loss(fc, p, c, LossWeights{}, m);
  const LossBreakdown pointwise =
      total_loss(make_handle(fc, p), c, LossWeights{}, m);
  CHECK(batched.total == doctest::Approx(pointwise.total).epsilon(1e-12));
}

TEST_CASE("init contracts") {
  for (ModelKind kind : kAll) {
    const ParamVector a = init_params(kind, 7);
    CHECK(a.values == init_params(kind, 7).values);
    CHECK(a.values != init_params(kind, 8).values);
    CHECK_NOTHROW(a.validate());
  }
  const ParamVector q = init_params(ModelKind::QPINN, 3);
  CHECK(q.values[kQpinnLambdaSlot] == 0.0);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(q.values[i]) <= 0.1);
  const ParamVector fc = init_params(ModelKind::FullyConnected, 3);
  for (int i = 0; i < 20; ++i) CHECK(std::abs(fc.values[i]) <= std::sqrt(0.5));
  for (int i = 20; i < 30; ++i) CHECK(fc.values[i] == 0.0);
  const ParamVector wide = init_params(ModelKind::Counterpart, 3, {0.1, 2.0});
  double biggest = 0.0;
  for (double v : wide.values) biggest = std::max(biggest, std::abs(v));
  CHECK(biggest > 0.1);
  CHECK(biggest <= 2.0);
}

TEST_CASE("parameter groups tile the vector") {
  for (ModelKind kind : kAll) {
    int next = 0;
    for (const auto& [off, len] : param_groups(kind)) {
      CHECK(off == next);
      CHECK(len > 0);
      next = off + len;
    }
    CHECK(next == param_count(kind));
  }
  CHECK(param_groups(ModelKind::FullyConnected).size() == 12);
}

TEST_CASE("counterpart polynomials embed in the quantum-inspired model") {
  // Degree-1 factors with sup norm <= 1/2 are reachable by synthesis.
  Rng rng = make_rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> cp(6);
    for (int f = 0; f < 2; ++f) {
      const double a = uniform(rng, -0.25, 0.25), b = uniform(rng, -0.25, 0.25);
      cp[3 * f] = a;
      cp[3 * f + 1] = b;
    }
    std::vector<double> qi;
    for (int f = 0; f < 2; ++f) {
      const UnivariatePoly target{{cp[3 * f], cp[3 * f + 1]}};
      const AnglePair ap = synthesize_angles(target, 1);
      REQUIRE(ap.theta1.size() == 1);
      REQUIRE(ap.theta2.size() == 2);
      qi.push_back(ap.theta1[0]);
      qi.insert(qi.end(), ap.theta2.begin(), ap.theta2.end());
    }
    for (int i = 0; i < 50; ++i) {
      const double t = uniform(rng, -1, 1), x = uniform(rng, -1, 1);
      CHECK(std::abs(
                model_core<double>(ModelKind::QuantumInspired, qi, t, x) -
                model_core<double>(ModelKind::Counterpart, cp, t, x)) < 1e-6);
    }
  }
}
