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

#include "qtd/constructions.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace qtd {

namespace {

// Appends the chain with `degree` encoding gates on `qubit`, every gate
// carrying `controls`.
void add_chain(Circuit& c, int degree, int param_base, int input_var,
               int qubit, const std::vector<Control>& controls) {
  auto with_controls = [&](Gate g) {
    g.controls = controls;
    c.add(std::move(g));
  };
  with_controls(Gate::rz(qubit, AngleExpr::param(param_base)));
  for (int k = 1; k <= degree; ++k) {
    with_controls(Gate::rx(qubit, AngleExpr::input_arccos(input_var, -2.0)));
    with_controls(Gate::rz(qubit, AngleExpr::param(param_base + k)));
  }
}

// Controls selecting index pattern `r` on `reg` (most significant first).
void add_pattern(std::vector<Control>& controls, const std::vector<int>& reg,
                 std::size_t r) {
  const std::size_t k = reg.size();
  for (std::size_t a = 0; a < k; ++a)
    controls.push_back({reg[a], static_cast<int>((r >> (k - 1 - a)) & 1u)});
}

void check_L(int L) {
  if (L < 1) throw InvalidArgument("the parity-split model needs L >= 1");
}

// Per variable: low branch on selector = |0>, high branch on selector = |1>.
void add_parity_pair(Circuit& c, int L, int param_base, int input_var,
                     int selector, int qubit, std::vector<Control> controls) {
  controls.push_back({selector, 0});
  add_chain(c, L - 1, param_base, input_var, qubit, controls);
  controls.back().polarity = 1;
  add_chain(c, L, param_base + L, input_var, qubit, controls);
}

std::vector<double> flatten(std::span<const AnglePair> angles) {
  std::vector<double> out;
  for (const auto& a : angles) {
    out.insert(out.end(), a.theta1.begin(), a.theta1.end());
    out.insert(out.end(), a.theta2.begin(), a.theta2.end());
  }
  return out;
}

}  // namespace

int index_bits(std::size_t count) {
  int bits = 0;
  while ((std::size_t{1} << bits) < count) ++bits;
  return bits;
}

std::vector<std::vector<int>> full_grid(int D, int L) {
  std::vector<std::vector<int>> out;
  std::vector<int> n(D, 0);
  while (true) {
    out.push_back(n);
    int j = D - 1;
    while (j >= 0 && n[j] == L) n[j--] = 0;
    if (j < 0) break;
    ++n[j];
  }
  return out;
}

Circuit univariate_model_circuit(int L) {
  check_L(L);
  Circuit c(3, 2 * L + 1, 1);
  for (int q = 0; q < 3; ++q) c.add(Gate::h(q));
  add_parity_pair(c, L, 0, 0, 1, 2, {{0, 1}});
  c.add(Gate::h(0));
  return c;
}

BoundCircuit build_univariate_model(std::span<const double> theta1,
                                    std::span<const double> theta2) {
  const int L = static_cast<int>(theta1.size());
  if (theta2.size() != theta1.size() + 1)
    throw InvalidArgument("theta2 must have one more angle than theta1");
  BoundCircuit out{univariate_model_circuit(L), {}, 1.0};
  out.params.assign(theta1.begin(), theta1.end());
  out.params.insert(out.params.end(), theta2.begin(), theta2.end());
  return out;
}

Circuit rank1_circuit(int D, int L) {
  std::vector<double> one{1.0};
  return td_circuit(1, D, L, one);
}

BoundCircuit build_rank1_circuit(std::span<const AnglePair> angles) {
  if (angles.empty()) throw InvalidArgument("need at least one variable");
  const int L = static_cast<int>(angles[0].theta1.size());
  for (const auto& a : angles)
    if (a.theta1.size() != static_cast<std::size_t>(L) ||
        a.theta2.size() != static_cast<std::size_t>(L) + 1)
      throw InvalidArgument("every variable needs L and L+1 angles");
  return {rank1_circuit(static_cast<int>(angles.size()), L), flatten(angles),
          1.0};
}

Circuit td_circuit(int R, int D, int L, std::span<const double> lambdas) {
  check_L(L);
  if (R < 1 || D < 1) throw InvalidArgument("td_circuit needs R, D >= 1");
  if (lambdas.size() != static_cast<std::size_t>(R))
    throw InvalidArgument("td_circuit needs R lambdas");
  double big_lambda = 0.0;
  for (double l : lambdas) big_lambda += std::abs(l);
  if (!(big_lambda > 0.0))
    throw InvalidArgument("sum of |lambda_r| must be positive");
  const int a = index_bits(static_cast<std::size_t>(R));
  const int width = 2 * D + a + 1;
  const int per_term = D * (2 * L + 1);
  Circuit c(width, R * per_term, D);
  std::vector<int> reg(a);
  for (int k = 0; k < a; ++k) reg[k] = 1 + k;
  c.add(Gate::h(0));
  if (a > 0) {
    std::vector<double> amps(std::size_t{1} << a, 0.0);
    for (int r = 0; r < R; ++r) amps[r] = std::sqrt(std::abs(lambdas[r]) / big_lambda);
    c.add(Gate::prepare(reg, amps));
  }
  for (int q = 1 + a; q < width; ++q) c.add(Gate::h(q));
  for (int r = 0; r < R; ++r) {
    std::vector<Control> controls{{0, 1}};
    add_pattern(controls, reg, static_cast<std::size_t>(r));
    for (int j = 0; j < D; ++j)
      add_parity_pair(c, L, r * per_term + j * (2 * L + 1), j,
                      1 + a + 2 * j, 2 + a + 2 * j, controls);
  }
  c.add(Gate::h(0));
  return c;
}

BoundCircuit build_td_circuit(const TdPoly& p, const SynthesisOptions& opts) {
  p.validate();
  std::vector<AnglePair> angles;
  double big_lambda = 0.0;
  for (double l : p.lambdas) big_lambda += std::abs(l);
  for (int r = 0; r < p.R; ++r) {
    for (int j = 0; j < p.D; ++j) {
      UnivariatePoly f = p.factors[r][j];
      // The sign of lambda_r moves into the first factor.
      if (j == 0 && p.lambdas[r] < 0)
        for (double& c : f.coeffs) c = -c;
      SynthesisOptions sub = opts;
      sub.seed = opts.seed + 2 * static_cast<std::uint64_t>(r * p.D + j);
      angles.push_back(synthesize_angles(f, p.L, sub));
    }
  }
  return {td_circuit(p.R, p.D, p.L, p.lambdas), flatten(angles), big_lambda};
}

Circuit lcu_circuit(const std::vector<std::vector<int>>& exponents, int D) {
  if (exponents.empty()) throw InvalidArgument("need at least one monomial");
  if (D < 1) throw InvalidArgument("need D >= 1");
  const std::size_t T = exponents.size();
  const int a = index_bits(T);
  const int width = D + a + 1;
  int n_params = 0;
  for (const auto& n : exponents) {
    if (n.size() != static_cast<std::size_t>(D))
      throw InvalidArgument("multi-index length differs from D");
    for (int e : n) {
      if (e < 0) throw InvalidArgument("negative exponent");
      n_params += e + 1;
    }
  }
  Circuit c(width, n_params, D);
  std::vector<int> reg(a);
  for (int k = 0; k < a; ++k) reg[k] = 1 + k;
  c.add(Gate::h(0));
  if ((std::size_t{1} << a) == T) {
    for (int q : reg) c.add(Gate::h(q));
  } else {
    std::vector<double> amps(std::size_t{1} << a, 0.0);
    for (std::size_t i = 0; i < T; ++i)
      amps[i] = 1.0 / std::sqrt(static_cast<double>(T));
    c.add(Gate::prepare(reg, amps));
  }
  for (int j = 0; j < D; ++j) c.add(Gate::h(1 + a + j));
  int slot = 0;
  for (std::size_t i = 0; i < T; ++i) {
    std::vector<Control> controls{{0, 1}};
    add_pattern(controls, reg, i);
    for (int j = 0; j < D; ++j) {
      add_chain(c, exponents[i][j], slot, j, 1 + a + j, controls);
      slot += exponents[i][j] + 1;
    }
  }
  c.add(Gate::h(0));
  return c;
}

BoundCircuit build_lcu_multivariate(const MonomialList& monomials, int D,
                                    int L, const SynthesisOptions& opts) {
  if (monomials.entries.empty())
    throw InvalidArgument("need at least one monomial");
  monomials.validate(D, L);
  const double T = static_cast<double>(monomials.entries.size());
  double cmax = monomials.max_abs_coeff();
  if (cmax == 0.0) cmax = 1.0;
  std::vector<std::vector<int>> exponents;
  std::vector<double> params;
  std::map<std::pair<int, double>, QspAngles> cache;
  auto chain_for = [&](int n, double coeff) {
    auto key = std::make_pair(n, coeff);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    UnivariatePoly target{std::vector<double>(n + 1, 0.0)};
    target.coeffs[n] = coeff;
    SynthesisOptions sub = opts;
    sub.seed = opts.seed + cache.size();
    return cache[key] = synthesize_chain(target, n, sub);
  };
  for (const auto& m : monomials.entries) {
    exponents.push_back(m.n);
    for (int j = 0; j < D; ++j) {
      const auto th = chain_for(m.n[j], j == 0 ? m.c / cmax : 1.0);
      params.insert(params.end(), th.begin(), th.end());
    }
  }
  return {lcu_circuit(exponents, D), std::move(params), T * cmax};
}

}  // namespace qtd
