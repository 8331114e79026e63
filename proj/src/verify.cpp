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

#include "qtd/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "qtd/audit.hpp"
#include "qtd/autodiff.hpp"
#include "qtd/constructions.hpp"
#include "qtd/lowering.hpp"
#include "qtd/random.hpp"
#include "qtd/statevector.hpp"
#include "qtd/trainer.hpp"
#include "qtd/unitary.hpp"

namespace qtd {

namespace {

using std::numbers::pi;

// Runs `body`, which returns the worst error, and compares it to `bound`.
CheckResult check(std::string name, double bound,
                  const std::function<double()>& body,
                  std::string detail = {}) {
  CheckResult r{std::move(name), false, 0.0, bound, std::move(detail)};
  try {
    r.value = body();
    r.passed = std::isfinite(r.value) && r.value < bound;
  } catch (const std::exception& e) {
    r.passed = false;
    r.value = std::nan("");
    r.detail = e.what();
  }
  return r;
}

double zval(const BoundCircuit& b, std::span<const double> x) {
  return expect_z0(run<double>(b.circuit, b.params, x));
}

UnivariatePoly random_poly(Rng& rng, int degree, double sup) {
  UnivariatePoly p{std::vector<double>(degree + 1)};
  for (auto& c : p.coeffs) c = uniform(rng, -1, 1);
  const double s = sup_norm(p);
  for (auto& c : p.coeffs) c *= sup / s;
  return p;
}

std::vector<double> random_point(Rng& rng, int D) {
  std::vector<double> x(D);
  for (auto& v : x) v = uniform(rng, -1, 1);
  return x;
}

// |a - b| / max(1, |b|).
double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

std::vector<CheckResult> circuits_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;

  out.push_back(check("parity_split_reconstructs", 1e-13, [&] {
    Rng rng = make_rng(seed, 10);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const UnivariatePoly p = random_poly(rng, 1 + trial % 6, 0.5);
      const auto [odd, even] = parity_split(p);
      for (std::size_t k = 1; k < even.coeffs.size(); k += 2)
        worst = std::max(worst, std::abs(even.coeffs[k]));
      for (std::size_t k = 0; k < odd.coeffs.size(); k += 2)
        worst = std::max(worst, std::abs(odd.coeffs[k]));
      for (int i = 0; i < 20; ++i) {
        const double x = uniform(rng, -1, 1);
        worst = std::max(worst,
                         std::abs(0.5 * (even.eval(x) + odd.eval(x)) - p.eval(x)));
      }
    }
    return worst;
  }));

  for (int L = 1; L <= 3; ++L) {
    out.push_back(check(
        "prop1_univariate_L" + std::to_string(L), 1e-6,
        [&] {
          Rng rng = make_rng(seed, 20 + L);
          double worst = 0.0;
          for (int draw = 0; draw < 20; ++draw) {
            const UnivariatePoly p = random_poly(rng, L, 0.5);
            SynthesisOptions opts;
            opts.seed = seed + draw;
            const AnglePair a = synthesize_angles(p, L, opts);
            const BoundCircuit b = build_univariate_model(a.theta1, a.theta2);
            for (int i = 0; i < 50; ++i) {
              const double x = -1.0 + 2.0 * i / 49.0;
              const std::vector<double> in{x};
              worst = std::max(worst, std::abs(zval(b, in) - p.eval(x)));
            }
          }
          return worst;
        },
        "20 targets with sup norm 1/2, 50 grid points"));
  }

  out.push_back(check(
      "thm1_full_grid_lcu", 1e-6,
      [&] {
        Rng rng = make_rng(seed, 30);
        double worst = 0.0;
        for (int draw = 0; draw < 10; ++draw) {
          MonomialList m;
          for (const auto& n : full_grid(2, 1))
            m.entries.push_back({n, uniform(rng, -2, 2)});
          SynthesisOptions opts;
          opts.seed = seed + draw;
          const BoundCircuit b = build_lcu_multivariate(m, 2, 1, opts);
          const double lambda = m.max_abs_coeff() * 4.0;
          worst = std::max(worst, std::abs(b.lambda - lambda));
          for (int i = 0; i < 20; ++i) {
            const auto x = random_point(rng, 2);
            worst = std::max(worst, std::abs(zval(b, x) - m.eval(x) / lambda));
          }
        }
        return worst;
      },
      "D=2, L=1, 10 coefficient draws x 20 points"));

  out.push_back(check(
      "thm2_tensor_decomposed", 1e-6,
      [&] {
        Rng rng = make_rng(seed, 40);
        double worst = 0.0;
        for (int draw = 0; draw < 10; ++draw) {
          TdPoly p{2, 2, 1, {}, {}};
          for (int r = 0; r < 2; ++r) {
            p.lambdas.push_back(uniform(rng, -2, 2));
            p.factors.push_back({random_poly(rng, 1, 0.5),
                                 random_poly(rng, 1, 0.5)});
          }
          SynthesisOptions opts;
          opts.seed = seed + draw;
          const BoundCircuit b = build_td_circuit(p, opts);
          const double lambda =
              std::abs(p.lambdas[0]) + std::abs(p.lambdas[1]);
          for (int i = 0; i < 20; ++i) {
            const auto x = random_point(rng, 2);
            worst = std::max(worst, std::abs(zval(b, x) - p.eval(x) / lambda));
          }
        }
        return worst;
      },
      "R=2, D=2, L=1, 10 draws x 20 points"));

  out.push_back(check(
      "cor1_dequantization", 1e-12,
      [&] {
        Rng rng = make_rng(seed, 50);
        double worst = 0.0;
        for (int trial = 0; trial < 30; ++trial) {
          const int D = 1 + trial % 3, L = 1 + trial % 4;
          std::vector<AnglePair> angles(D);
          for (auto& a : angles) {
            for (int k = 0; k < L; ++k) a.theta1.push_back(uniform(rng, -pi, pi));
            for (int k = 0; k <= L; ++k)
              a.theta2.push_back(uniform(rng, -pi, pi));
          }
          const BoundCircuit b = build_rank1_circuit(angles);
          for (int i = 0; i < 10; ++i) {
            const auto x = random_point(rng, D);
            std::complex<double> prod = 1.0;
            for (int j = 0; j < D; ++j)
              prod *= 0.5 * (qsp_value(angles[j].theta1, x[j]) +
                             qsp_value(angles[j].theta2, x[j]));
            worst = std::max(worst, std::abs(zval(b, x) - prod.real()));
          }
        }
        return worst;
      },
      "statevector vs product of 2x2 chains"));
  return out;
}

std::vector<CheckResult> lowering_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (int L = 1; L <= 6; ++L) {
    const AuditReport a = audit_resources(
        {Construction::Prop1, L, 1, 1, NativeGateSet::CnotSingleQubit});
    CheckResult r{"prop1_lowered_counts_L" + std::to_string(L), a.passed, 0,
                  0, ""};
    for (const auto& row : a.rows) {
      r.value += row.passed ? 0 : 1;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += row.quantity + " " + std::to_string(row.measured) + " " +
                  row.relation + " " + std::to_string(row.formula);
    }
    out.push_back(r);
  }
  for (int L = 1; L <= 3; ++L) {
    out.push_back(check(
        "prop1_lowered_equivalence_L" + std::to_string(L), 1e-10, [&] {
          Rng rng = make_rng(seed, 60 + L);
          const Circuit c = univariate_model_circuit(L);
          const Circuit low = lower_to_cnot_single(c);
          double worst = 0.0;
          for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> p(c.n_params());
            for (auto& v : p) v = uniform(rng, -pi, pi);
            const std::vector<double> in{uniform(rng, -1, 1)};
            worst = std::max(worst,
                             max_diff_up_to_phase(unitary_of(low, p, in),
                                                  unitary_of(c, p, in)));
          }
          return worst;
        }));
  }
  // Resource formulas across the audited size range; the value counts
  // failing configurations.
  for (Construction con : {Construction::Prop1, Construction::Cor1,
                           Construction::Thm2, Construction::Thm1}) {
    CheckResult r{"audit_" + std::string(to_string(con)), true, 0, 0, ""};
    int configs = 0;
    try {
      for (NativeGateSet native : {NativeGateSet::DoubleControlledNative,
                                   NativeGateSet::CnotSingleQubit})
        for (int L = 1; L <= 6; ++L)
          for (int D = 1; D <= 3; ++D)
            for (int R = 1; R <= 4; ++R) {
              if (con == Construction::Prop1 && (D > 1 || R > 1)) continue;
              if (con != Construction::Thm2 && R > 1) continue;
              const AuditReport a = audit_resources({con, L, D, R, native});
              ++configs;
              if (!a.passed) {
                r.passed = false;
                r.value += 1;
                r.detail += std::string(to_string(native)) +
                            " L=" + std::to_string(L) +
                            " D=" + std::to_string(D) +
                            " R=" + std::to_string(R) + " fails; ";
              }
            }
    } catch (const std::exception& e) {
      r.passed = false;
      r.value = 1;
      r.detail = e.what();
    }
    if (r.passed) r.detail = std::to_string(configs) + " configurations";
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> derivatives_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (ModelKind kind : {ModelKind::QPINN, ModelKind::QuantumInspired,
                         ModelKind::Counterpart, ModelKind::FullyConnected}) {
    out.push_back(check(
        "dual_vs_fd_" + std::string(to_string(kind)), 1e-4,
        [&] {
          Rng rng = make_rng(seed, 70);
          const ModelSpec spec{kind};
          const double h = 1e-4;
          double worst = 0.0;
          for (int draw = 0; draw < 5; ++draw) {
            std::vector<double> p(param_count(kind));
            const double r = kind == ModelKind::FullyConnected ? 0.6 : pi;
            for (auto& v : p) v = uniform(rng, -r, r);
            for (int i = 0; i < 50; ++i) {
              const double t = uniform(rng, kSampleLo, kSampleHi);
              const double x = uniform(rng, kSampleLo, kSampleHi);
              const DerivBundle d = model_bundle(spec, p, t, x);
              auto f = [&](double tt, double xx) {
                return model_value(spec, p, tt, xx);
              };
              const double f0 = f(t, x);
              const double fxp = f(t, x + h), fxm = f(t, x - h);
              worst = std::max(
                  {worst, rel_err(d.v, f0),
                   rel_err(d.v_t, (f(t + h, x) - f(t - h, x)) / (2 * h)),
                   rel_err(d.v_x, (fxp - fxm) / (2 * h)),
                   rel_err(d.v_xx, (fxp - 2 * f0 + fxm) / (h * h))});
            }
          }
          return worst;
        },
        "v, v_t, v_x, v_xx at 50 points x 5 parameter draws"));
  }

  out.push_back(check(
      "shift_vs_fd_qpinn_output", 1e-4,
      [&] {
        Rng rng = make_rng(seed, 71);
        const Circuit& c = qpinn_circuit();
        double worst = 0.0;
        for (int draw = 0; draw < 5; ++draw) {
          std::vector<double> p(7);
          for (auto& v : p) v = uniform(rng, -pi, pi);
          for (int i = 0; i < 10; ++i) {
            const std::vector<double> in{uniform(rng, kSampleLo, kSampleHi),
                                         uniform(rng, kSampleLo, kSampleHi)};
            auto f = [&](std::span<const double> q) {
              return expect_z0(run<double>(c, q, in));
            };
            const auto fd = fd_gradient(f, p, 1e-6);
            for (int j = 0; j < 7; ++j)
              worst = std::max(worst,
                               rel_err(parameter_shift(c, p, in, j), fd[j]));
          }
        }
        return worst;
      },
      "all seven rotation slots"));

  for (ModelKind kind : {ModelKind::QPINN, ModelKind::QuantumInspired}) {
    out.push_back(check(
        "shift_vs_fd_loss_gradient_" + std::string(to_string(kind)), 1e-4,
        [&] {
          const MarketParams m;
          const LossWeights w;
          const ModelSpec spec{kind};
          double worst = 0.0;
          for (std::uint64_t s = 0; s < 5; ++s) {
            const CollocationSet c = sample_collocation(seed + s);
            const ParamVector p = init_params(kind, seed + s, {pi, 0.1});
            const auto shift = shift_loss_gradient(spec, p.values, c, w, m);
            const auto fd = fd_gradient(
                [&](std::span<const double> q) {
                  return model_loss(spec, q, c, w, m).total;
                },
                p.values);
            double scale = 1.0;
            for (double g : fd) scale = std::max(scale, std::abs(g));
            for (std::size_t j = 0; j < fd.size(); ++j)
              worst = std::max(worst, std::abs(shift[j] - fd[j]) / scale);
          }
          return worst;
        },
        "5 seeds at initialization, error relative to the largest entry"));
  }
  return out;
}

std::vector<CheckResult> hjb_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const MarketParams m;
  out.push_back(check(
      "analytical_residual", 1e-8,
      [&] {
        Rng rng = make_rng(seed, 80);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
          const double t = uniform(rng, kSampleLo, kSampleHi);
          const double x = uniform(rng, kSampleLo, kSampleHi);
          worst = std::max(
              worst, std::abs(hjb_residual(analytical_bundle(m, t, x), x, m)));
          const auto dt = derive2(
              [&](const Dual2& s) { return analytical_v(m, s, Dual2(x)); }, t);
          const auto dx = derive2(
              [&](const Dual2& s) { return analytical_v(m, Dual2(t), s); }, x);
          const DerivBundle d{dt.v, dt.d1, dx.d1, dx.d2};
          worst = std::max(worst, std::abs(hjb_residual(d, x, m)));
        }
        return worst;
      },
      "1000 points, closed-form and dual derivatives"));
  out.push_back(check("boundary_identities", 1e-12, [&] {
    Rng rng = make_rng(seed, 81);
    double worst = 0.0;
    const double k = k_constant(m);
    for (int i = 0; i < 1000; ++i) {
      const double s = uniform(rng, kSampleLo, kSampleHi);
      worst = std::max(worst, std::abs(analytical_v(m, m.T, s) -
                                       std::pow(s, m.gamma) / m.gamma));
      worst = std::max(worst, std::abs(analytical_v(m, s, 1.0) -
                                       std::exp(-k * (m.T - s)) / m.gamma));
    }
    return worst;
  }));
  out.push_back(check("analytical_total_loss", 1e-12, [&] {
    const ModelHandle exact{
        [&](double t, double x) { return analytical_bundle(m, t, x); },
        [&](double t, double x) { return analytical_v(m, t, x); }};
    return total_loss(exact, sample_collocation(seed), LossWeights{}, m).total;
  }));
  out.push_back(check(
      "optimal_control", 1e-10,
      [&] {
        Rng rng = make_rng(seed, 82);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
          const double t = uniform(rng, 0.0, m.T);
          const double x = uniform(rng, kSampleLo, kSampleHi);
          const DerivBundle d = analytical_bundle(m, t, x);
          worst = std::max(
              worst, std::abs(optimal_control(d.v_x, d.v_xx, x, m) - 0.95));
        }
        return worst;
      },
      "|alpha - 0.95| over 1000 points"));
  out.push_back(check("k_constant", 1e-12, [&] {
    return std::abs(k_constant(m) - (-0.019857375));
  }));
  return out;
}

}  // namespace

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"circuits", "lowering",
                                              "derivatives", "hjb"};
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.suite = std::string(name);
  if (name == "circuits") {
    r.checks = circuits_suite(seed);
  } else if (name == "lowering") {
    r.checks = lowering_suite(seed);
  } else if (name == "derivatives") {
    r.checks = derivatives_suite(seed);
  } else if (name == "hjb") {
    r.checks = hjb_suite(seed);
  } else {
    throw InvalidArgument("unknown suite '" + std::string(name) +
                          "' (expected circuits, lowering, derivatives or "
                          "hjb)");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  return r;
}

void to_json(Json& j, const CheckResult& c) {
  j = {{"name", c.name},
       {"passed", c.passed},
       {"value", std::isfinite(c.value) ? Json(c.value) : Json(nullptr)},
       {"threshold", c.threshold},
       {"detail", c.detail}};
}

void to_json(Json& j, const SuiteReport& r) {
  j = {{"suite", r.suite},
       {"passed", r.passed()},
       {"seconds", r.seconds},
       {"checks", r.checks}};
}

}  // namespace qtd
