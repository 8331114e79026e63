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
#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

#include "qtd/circuit.hpp"
#include "qtd/lowering.hpp"
#include "qtd/random.hpp"
#include "qtd/resources.hpp"
#include "qtd/unitary.hpp"

using namespace qtd;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

// Product of 2x2 matrices for the chain, written out directly.
Eigen::Matrix2cd chain_matrix(const std::vector<double>& theta, double x) {
  const double enc = -2.0 * std::acos(x);
  Eigen::Matrix2cd u = rz_matrix(theta[0]);
  for (std::size_t j = 1; j < theta.size(); ++j)
    u = rz_matrix(theta[j]) * rx_matrix(enc) * u;
  return u;
}

Circuit random_controlled_circuit(Rng& rng, int width, int n_gates) {
  Circuit c(width, n_gates, 1);
  for (int i = 0; i < n_gates; ++i) {
    std::vector<int> qs(width);
    for (int q = 0; q < width; ++q) qs[q] = q;
    std::shuffle(qs.begin(), qs.end(), rng);
    const int kind = static_cast<int>(uniform(rng, 0, 4));
    const int n_ctrl = static_cast<int>(uniform(rng, 0, 3));
    Gate g;
    if (kind == 0) g = Gate::rz(qs[0], AngleExpr::param(i));
    if (kind == 1) g = Gate::rx(qs[0], AngleExpr::param(i, -0.5, 0.3));
    if (kind == 2) g = Gate::rx(qs[0], AngleExpr::input_arccos(0, -2.0));
    if (kind == 3) {
      g = Gate::rzz(qs[0], qs[1], AngleExpr::param(i));
      if (n_ctrl == 2) {
        // Only the RZ inside the ZZ rotation is controlled.
        g.controls.push_back({qs[2], uniform01(rng) < 0.5 ? 0 : 1});
        g.controls.push_back({qs[3], uniform01(rng) < 0.5 ? 0 : 1});
        c.add(g);
        continue;
      }
    }
    const int first_free = kind == 3 ? 2 : 1;
    for (int k = 0; k < n_ctrl; ++k)
      g.controls.push_back({qs[first_free + k], uniform01(rng) < 0.5 ? 0 : 1});
    c.add(g);
  }
  return c;
}

}  // namespace

TEST_CASE("qsp chain layout and parameter slots") {
  const Circuit c0 = build_qsp_chain(0);
  CHECK(c0.size() == 1);
  CHECK(c0.n_params() == 1);
  const Circuit c3 = build_qsp_chain(3, 2, 1);
  CHECK(c3.size() == 7);
  CHECK(c3.n_params() == 6);
  CHECK(c3.n_inputs() == 2);
  for (std::size_t i = 0; i < c3.size(); ++i) {
    const auto& g = c3.gates()[i];
    CHECK(g.kind == (i % 2 == 0 ? GateKind::RZ : GateKind::RX));
    if (i % 2 == 0) CHECK(g.angle.index == 2 + static_cast<int>(i / 2));
    if (i % 2 == 1) CHECK(g.angle.index == 1);
  }
}

TEST_CASE("qsp chain with zero angles is a pure encoding power") {
  const Circuit c = build_qsp_chain(2);
  const std::vector<double> params(3, 0.0), inputs{0.5};
  const auto u = unitary_of(c, params, inputs);
  const auto expect = rx_matrix(-4.0 * std::acos(0.5));
  CHECK((u - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(u(0, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("unitary_of on elementary gates") {
  Circuit h(1);
  h.add(Gate::h(0));
  const auto uh = unitary_of(h);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(uh(0, 0) - r) < 1e-15);
  CHECK(std::abs(uh(1, 1) + r) < 1e-15);

  const double theta = 0.73;
  Circuit zz(2, 1);
  zz.add(Gate::rzz(0, 1, AngleExpr::param(0)));
  const std::vector<double> p{theta};
  const auto u = unitary_of(zz, p);
  const cd m = std::polar(1.0, -theta / 2), pl = std::polar(1.0, theta / 2);
  CHECK(std::abs(u(0, 0) - m) < 1e-15);
  CHECK(std::abs(u(1, 1) - pl) < 1e-15);
  CHECK(std::abs(u(2, 2) - pl) < 1e-15);
  CHECK(std::abs(u(3, 3) - m) < 1e-15);

  const Circuit chain = build_qsp_chain(1);
  const std::vector<double> zero(2, 0.0), x{0.0};
  const auto uc = unitary_of(chain, zero, x);
  CHECK(std::abs(uc(0, 0)) < 1e-15);
  CHECK(std::abs(uc(0, 1) - cd(0, 1)) < 1e-15);
  CHECK(std::abs(uc(1, 0) - cd(0, 1)) < 1e-15);
}

TEST_CASE("unitary_of agrees with a 2x2 chain oracle") {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> theta(4);
    for (auto& t : theta) t = uniform(rng, -pi, pi);
    const double x = uniform(rng, -1, 1);
    const std::vector<double> in{x};
    const auto u = unitary_of(build_qsp_chain(3), theta, in);
    CHECK((u - chain_matrix(theta, x)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unitary_of errors") {
  Circuit big(kMaxUnitaryWidth + 1);
  CHECK_THROWS_AS(unitary_of(big), SizeError);
  const Circuit c = build_qsp_chain(1);
  const std::vector<double> p(2, 0.0), x{1.5};
  CHECK_THROWS_AS(unitary_of(c, p, x), DomainError);
}

TEST_CASE("circuit validation") {
  Circuit c(2, 1, 1);
  CHECK_THROWS_AS(c.add(Gate::h(2)), InvalidArgument);
  CHECK_THROWS_AS(c.add(Gate::cnot(1, 1)), IndexCollisionError);
  CHECK_THROWS_AS(c.add(Gate::rz(0, AngleExpr::param(1))), InvalidArgument);
  CHECK_THROWS_AS(c.add(Gate::rz(0, AngleExpr::input_arccos(1, 1.0))),
                  InvalidArgument);
  CHECK_THROWS_AS(c.add(Gate::prepare({0}, {0.5, 0.5})), InvalidArgument);
  CHECK_THROWS_AS(c.add(Gate::prepare({0}, {-0.6, 0.8})), InvalidArgument);
  c.add(Gate::prepare({0, 1}, {0.5, 0.5, 0.5, 0.5}));
  CHECK(c.size() == 1);
}

TEST_CASE("controlled_wrap") {
  const Circuit base = embed(build_qsp_chain(1), std::vector<int>{1}, 2);
  CHECK(controlled_wrap(base, {}) == base);

  Circuit rx(2, 0, 0);
  rx.add(Gate::rx(1, AngleExpr::constant(pi)));
  const std::vector<Control> ctl{{0, 1}};
  const auto u = unitary_of(controlled_wrap(rx, ctl));
  CHECK((u.topLeftCorner(2, 2) - Eigen::Matrix2cd::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK((u.bottomRightCorner(2, 2) - rx_matrix(pi)).cwiseAbs().maxCoeff() <
        1e-15);

  const std::vector<Control> clash{{1, 1}};
  CHECK_THROWS_AS(controlled_wrap(rx, clash), IndexCollisionError);
}

TEST_CASE("parity-selected pair equals the averaged amplitude") {
  // |0><0| (x) U1 + |1><1| (x) U2 sandwiched by |+>|+>.
  Rng rng = make_rng(3);
  const int L = 2;
  std::vector<double> params(2 * L + 1);
  for (auto& p : params) p = uniform(rng, -pi, pi);
  const double x = 0.37;
  const std::vector<int> map{1};
  Circuit w(2, 2 * L + 1, 1);
  const std::vector<Control> c0{{0, 0}}, c1{{0, 1}};
  w.append(controlled_wrap(embed(build_qsp_chain(L - 1, 0), map, 2, 2 * L + 1),
                           c0));
  w.append(controlled_wrap(embed(build_qsp_chain(L, L), map, 2, 2 * L + 1),
                           c1));
  const std::vector<double> in{x};
  const auto u = unitary_of(w, params, in);
  Eigen::Vector4cd plus = Eigen::Vector4cd::Constant(0.5);
  const cd lhs = plus.dot(u * plus);
  const std::vector<double> t1(params.begin(), params.begin() + L);
  const std::vector<double> t2(params.begin() + L, params.end());
  Eigen::Vector2cd p1 = Eigen::Vector2cd::Constant(1.0 / std::sqrt(2.0));
  const cd a1 = p1.dot(chain_matrix(t1, x) * p1);
  const cd a2 = p1.dot(chain_matrix(t2, x) * p1);
  CHECK(std::abs(lhs - 0.5 * (a1 + a2)) < 1e-12);
}

TEST_CASE("resource counting and greedy depth") {
  Circuit empty(3);
  const auto r0 = count_resources(empty, NativeGateSet::CnotSingleQubit);
  CHECK(r0 == ResourceReport{3, 0, 0, 0, 0, 0});

  Circuit c(3, 1);
  c.add(Gate::h(0));
  c.add(Gate::h(1));
  c.add(Gate::cnot(0, 2));
  c.add(Gate::rz(1, AngleExpr::param(0)));
  c.add(Gate::h(1));
  CHECK(layered_depth(c) == 3);
  const auto r = count_resources(c, NativeGateSet::CnotSingleQubit);
  CHECK(r.n_single_qubit == 4);
  CHECK(r.n_cnot == 1);
  CHECK(r.n_params == 1);

  Gate cc = Gate::rz(0, AngleExpr::param(0));
  cc.controls = {{1, 1}, {2, 0}};
  c.add(cc);
  CHECK_THROWS_AS(count_resources(c, NativeGateSet::CnotSingleQubit),
                  NeedsLoweringError);
  CHECK(count_resources(c, NativeGateSet::DoubleControlledNative)
            .n_multi_controlled == 1);
}

TEST_CASE("depth never decreases when appending") {
  Rng rng = make_rng(5);
  const Circuit c = random_controlled_circuit(rng, 5, 60);
  Circuit prefix(c.width(), c.n_params(), c.n_inputs());
  int last = 0;
  for (const auto& g : c.gates()) {
    prefix.add(g);
    const int d = layered_depth(prefix);
    CHECK(d >= last);
    last = d;
  }
}

TEST_CASE("lowering a single controlled rotation") {
  Circuit crz(2, 1);
  Gate g = Gate::rz(1, AngleExpr::param(0));
  g.controls = {{0, 1}};
  crz.add(g);
  const Circuit low = lower_to_cnot_single(crz);
  const auto r = count_resources(low, NativeGateSet::CnotSingleQubit);
  CHECK(r.n_single_qubit == 2);
  CHECK(r.n_cnot == 2);
  CHECK(r.depth == 4);
  const std::vector<double> p{1.234};
  CHECK(max_diff_up_to_phase(unitary_of(low, p), unitary_of(crz, p)) < 1e-12);

  Circuit ccrz(3, 1);
  Gate g2 = Gate::rz(2, AngleExpr::param(0));
  g2.controls = {{0, 1}, {1, 1}};
  ccrz.add(g2);
  const Circuit low2 = lower_to_cnot_single(ccrz);
  const auto r2 = count_resources(low2, NativeGateSet::CnotSingleQubit);
  CHECK(r2.n_single_qubit == 6);
  CHECK(r2.n_cnot == 8);
  CHECK(r2.depth == 12);
  CHECK(max_diff_up_to_phase(unitary_of(low2, p), unitary_of(ccrz, p)) <
        1e-12);

  Circuit ccrx(3, 1);
  Gate g3 = Gate::rx(2, AngleExpr::param(0));
  g3.controls = {{0, 1}, {1, 1}};
  ccrx.add(g3);
  const auto r3 = count_resources(lower_to_cnot_single(ccrx),
                                  NativeGateSet::CnotSingleQubit);
  CHECK(r3.n_single_qubit == 12);
  CHECK(r3.n_cnot == 8);
  CHECK(r3.depth == 18);
}

TEST_CASE("lowering preserves random controlled circuits") {
  Rng rng = make_rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const Circuit c = random_controlled_circuit(rng, 5, 12);
    std::vector<double> p(c.n_params());
    for (auto& v : p) v = uniform(rng, -pi, pi);
    const std::vector<double> in{uniform(rng, -1, 1)};
    const Circuit low = lower_to_cnot_single(c);
    CHECK_NOTHROW(count_resources(low, NativeGateSet::CnotSingleQubit));
    CHECK(max_diff_up_to_phase(unitary_of(low, p, in), unitary_of(c, p, in)) <
          1e-10);
  }
}

TEST_CASE("lowering rejects unsupported gates") {
  Circuit c(4, 1);
  Gate g = Gate::rz(3, AngleExpr::param(0));
  g.controls = {{0, 1}, {1, 1}, {2, 1}};
  c.add(g);
  CHECK_THROWS_AS(lower_to_cnot_single(c), UnsupportedLoweringError);
  Circuit p(2);
  p.add(Gate::prepare({0, 1}, {0.5, 0.5, 0.5, 0.5}));
  CHECK_THROWS_AS(lower_to_cnot_single(p), UnsupportedLoweringError);
}

TEST_CASE("householder preparation") {
  const std::vector<double> amps{0.6, 0.0, 0.8, 0.0};
  const auto h = householder_preparation(amps);
  CHECK((h * h - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  for (int i = 0; i < 4; ++i) CHECK(h(i, 0) == doctest::Approx(amps[i]));
}
