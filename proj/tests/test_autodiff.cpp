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
#include "qtd/constructions.hpp"
#include "qtd/random.hpp"
#include "qtd/statevector.hpp"

using namespace qtd;
using std::numbers::pi;

TEST_CASE("dual arithmetic examples") {
  const Dual2 x = Dual2::variable(0.3);
  const Dual2 sq = x * x;
  CHECK(sq.d1 == doctest::Approx(0.6));
  CHECK(sq.d2 == doctest::Approx(2.0));
  CHECK(acos(Dual2::variable(0.5)).d1 ==
        doctest::Approx(-1.0 / std::sqrt(0.75)).epsilon(1e-15));
  const Dual2 t = tanh(Dual2::variable(0.0));
  CHECK(t.d1 == 1.0);
  CHECK(t.d2 == 0.0);
  const Dual2 c = Dual2::constant(4.0);
  CHECK(c.d1 == 0.0);
  CHECK(c.d2 == 0.0);
}

TEST_CASE("dual domain errors") {
  CHECK_THROWS_AS(Dual2(1.0) / Dual2(0.0), DomainError);
  CHECK_THROWS_AS(acos(Dual2::variable(1.0)), DomainError);
  CHECK_THROWS_AS(sqrt(Dual2::variable(0.0)), DomainError);
  CHECK_THROWS_AS(sqrt(Dual2::variable(-1.0)), DomainError);
  CHECK_THROWS_AS(log(Dual2::variable(0.0)), DomainError);
}

TEST_CASE("derive2 examples") {
  const auto cube = derive2([](Dual2 x) { return x * x * x; }, 2.0);
  CHECK(cube.v == 8.0);
  CHECK(cube.d1 == 12.0);
  CHECK(cube.d2 == 12.0);
  const auto k = derive2([](Dual2) { return Dual2(3.5); }, 1.0);
  CHECK(k.v == 3.5);
  CHECK(k.d1 == 0.0);
  CHECK(k.d2 == 0.0);
}

TEST_CASE("random compositions match finite differences") {
  Rng rng = make_rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    double c[6];
    for (double& v : c) v = uniform(rng, -1, 1);
    auto f = [&](auto x) {
      using std::acos;
      using std::cos;
      using std::exp;
      using std::sin;
      using std::sqrt;
      using std::tanh;
      using std::pow;
      auto a = sin(x * c[0] + c[1]) * exp(x * c[2]);
      auto b = tanh(x * c[3]) + cos(x) * c[4];
      auto d = acos(x * 0.9) / sqrt(x * x + 1.0);
      auto e = pow(x * x + 0.5, 1.5) * c[5];
      return a * b + d - e / (x * x + 2.0);
    };
    const double x0 = uniform(rng, -0.9, 0.9);
    const auto d = derive2([&](Dual2 x) { return f(x); }, x0);
    const double h1 = 1e-5, h2 = 1e-4;
    const double fd1 = (f(x0 + h1) - f(x0 - h1)) / (2 * h1);
    const double fd2 = (f(x0 + h2) - 2 * f(x0) + f(x0 - h2)) / (h2 * h2);
    CHECK(d.v == doctest::Approx(f(x0)).epsilon(1e-14));
    CHECK(std::abs(d.d1 - fd1) <= 1e-5 * std::max(1.0, std::abs(fd1)));
    CHECK(std::abs(d.d2 - fd2) <= 1e-3 * std::max(1.0, std::abs(fd2)));
  }
}

TEST_CASE("derive2 is linear") {
  auto f = [](Dual2 x) { return sin(x) * x; };
  auto g = [](Dual2 x) { return exp(x * 0.5); };
  const double a = 1.7, b = -0.4, x0 = 0.35;
  const auto lhs = derive2([&](Dual2 x) { return f(x) * a + g(x) * b; }, x0);
  const auto df = derive2(f, x0), dg = derive2(g, x0);
  CHECK(std::abs(lhs.v - (a * df.v + b * dg.v)) < 1e-12);
  CHECK(std::abs(lhs.d1 - (a * df.d1 + b * dg.d1)) < 1e-12);
  CHECK(std::abs(lhs.d2 - (a * df.d2 + b * dg.d2)) < 1e-12);
}

TEST_CASE("parameter shift on a single rotation") {
  Circuit c(1, 1);
  c.add(Gate::rx(0, AngleExpr::param(0)));
  const std::vector<double> p{pi / 3};
  CHECK(parameter_shift(c, p, {}, 0) ==
        doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-14));
  const std::vector<double> z{0.0};
  CHECK(std::abs(parameter_shift(c, z, {}, 0)) < 1e-15);
  CHECK_THROWS_AS(parameter_shift(c, p, {}, 1), InvalidArgument);
}

TEST_CASE("parameter shift equals the dual derivative on constructions") {
  Rng rng = make_rng(32);
  std::vector<Circuit> circuits{univariate_model_circuit(2),
                                rank1_circuit(2, 1),
                                td_circuit(2, 2, 1, std::vector<double>{0.6, -0.4})};
  Circuit shared(2, 1, 1);
  shared.add(Gate::h(0));
  shared.add(Gate::rx(1, AngleExpr::param(0, 2.0)));
  shared.add(Gate::cnot(0, 1));
  Gate cg = Gate::rz(1, AngleExpr::param(0, -0.5, 0.2));
  cg.controls = {{0, 1}};
  shared.add(cg);
  shared.add(Gate::h(0));
  circuits.push_back(shared);
  for (const auto& c : circuits) {
    for (int point = 0; point < 20; ++point) {
      std::vector<double> p(c.n_params());
      for (auto& v : p) v = uniform(rng, -pi, pi);
      std::vector<double> in(c.n_inputs());
      for (auto& v : in) v = uniform(rng, -0.95, 0.95);
      const int idx = static_cast<int>(uniform(rng, 0, c.n_params()));
      std::vector<Dual2> pd(p.begin(), p.end());
      pd[idx] = Dual2::variable(p[idx]);
      std::vector<Dual2> ind(in.begin(), in.end());
      const double dual = expect_z0(run<Dual2>(c, pd, ind)).d1;
      CHECK(std::abs(parameter_shift(c, p, in, idx) - dual) < 1e-8);
    }
  }
}

TEST_CASE("finite-difference gradient") {
  auto quad = [](std::span<const double> t) {
    double s = 0;
    for (double v : t) s += v * v;
    return s;
  };
  const std::vector<double> p{1.0, -2.0};
  const auto g = fd_gradient(quad, p, 1e-5);
  CHECK(std::abs(g[0] - 2.0) < 1e-9);
  CHECK(std::abs(g[1] + 4.0) < 1e-9);
  const std::vector<double> z{0.0, 0.0};
  const auto g0 = fd_gradient(quad, z, 1e-5);
  CHECK(std::abs(g0[0]) < 1e-9);
  CHECK(std::abs(g0[1]) < 1e-9);
  CHECK_THROWS_AS(fd_gradient(quad, p, 0.0), InvalidArgument);
}
