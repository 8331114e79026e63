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

#include "qtd/trainer.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "qtd/autodiff.hpp"
#include "qtd/statevector.hpp"

namespace qtd {

void LrSchedule::validate() const {
  if (!(lr_max > 0.0 && lr_min > 0.0 && tail_lr > 0.0))
    throw InvalidArgument("learning rates must be positive");
  if (!(cosine_epochs >= 1 && hold_until >= cosine_epochs &&
        total_epochs >= hold_until))
    throw InvalidArgument(
        "schedule phases need 1 <= cosine_epochs <= hold_until <= "
        "total_epochs");
}

double lr_at(const LrSchedule& s, int epoch) {
  if (epoch < 0 || epoch >= s.total_epochs)
    throw InvalidArgument("epoch " + std::to_string(epoch) +
                          " outside the schedule");
  if (epoch < s.cosine_epochs) {
    const double c = std::cos(std::numbers::pi * epoch / s.cosine_epochs);
    return s.lr_min + 0.5 * (s.lr_max - s.lr_min) * (1.0 + c);
  }
  if (epoch < s.hold_until) return s.lr_min;
  return s.tail_lr;
}

std::string_view to_string(GradientMethod g) {
  return g == GradientMethod::FiniteDifference ? "finite_difference"
                                               : "parameter_shift";
}

GradientMethod gradient_method_from_string(std::string_view name) {
  if (name == "finite_difference") return GradientMethod::FiniteDifference;
  if (name == "parameter_shift") return GradientMethod::ParameterShift;
  throw InvalidArgument("unknown gradient method '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  schedule.validate();
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (epochs > schedule.total_epochs)
    throw InvalidArgument("epochs exceed the learning-rate schedule");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0))
    throw InvalidArgument("betas must lie in [0, 1)");
  if (!(weight_decay >= 0.0))
    throw InvalidArgument("weight_decay must be >= 0");
  if (!(trust_clamp > 0.0)) throw InvalidArgument("trust_clamp must be > 0");
  if (n_runs < 1) throw InvalidArgument("n_runs must be >= 1");
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step must be > 0");
  if (n_interior < 1 || n_boundary < 1)
    throw InvalidArgument("collocation counts must be >= 1");
  if (checkpoint_every < 0)
    throw InvalidArgument("checkpoint_every must be >= 0");
}

void lamb_step(std::span<double> params, std::span<const double> grads,
               LambState& state, double lr,
               std::span<const std::pair<int, int>> groups,
               const TrainConfig& cfg, int epoch) {
  if (grads.size() != params.size())
    throw InvalidArgument("gradient and parameter lengths differ");
  for (double g : grads)
    if (!std::isfinite(g)) throw TrainingAbort("non-finite gradient", epoch);
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  std::vector<double> u(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
    state.v[i] =
        cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
    u[i] = state.m[i] / (std::sqrt(state.v[i]) + cfg.eps) +
           cfg.weight_decay * params[i];
  }
  for (const auto& [off, len] : groups) {
    if (off < 0 || len < 0 ||
        static_cast<std::size_t>(off + len) > params.size())
      throw InvalidArgument("parameter group out of range");
    double wn = 0.0, un = 0.0;
    for (int i = off; i < off + len; ++i) {
      wn += params[i] * params[i];
      un += u[i] * u[i];
    }
    wn = std::min(std::sqrt(wn), cfg.trust_clamp);
    un = std::sqrt(un);
    const double tau = (wn == 0.0 || un == 0.0) ? 1.0 : wn / un;
    for (int i = off; i < off + len; ++i) params[i] -= lr * tau * u[i];
  }
}

RunLog optimize(ModelKind kind, std::vector<double> params, const LossFn& loss,
                const TrainConfig& cfg, std::uint64_t seed, const GradFn& grad,
                const CheckpointFn& checkpoint) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto groups = param_groups(kind);
  RunLog log;
  log.kind = kind;
  log.seed = seed;
  LambState state;
  const auto total = [&](std::span<const double> p) { return loss(p).total; };
  try {
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      const auto start = Clock::now();
      const LossBreakdown l = loss(params);
      if (!std::isfinite(l.total)) throw TrainingAbort("non-finite loss", epoch);
      const std::vector<double> g =
          grad ? grad(params) : fd_gradient(total, params, cfg.fd_step);
      const double lr = lr_at(cfg.schedule, epoch);
      lamb_step(params, g, state, lr, groups, cfg, epoch);
      const std::chrono::duration<double, std::milli> ms = Clock::now() - start;
      log.losses.push_back(l);
      log.lr.push_back(lr);
      log.wall_ms.push_back(ms.count());
      if (checkpoint && cfg.checkpoint_every > 0 &&
          (epoch + 1) % cfg.checkpoint_every == 0)
        checkpoint(epoch + 1, ParamVector{kind, params});
    }
  } catch (const TrainingAbort& e) {
    log.aborted = true;
    log.abort_reason = e.what();
  }
  log.final_params = ParamVector{kind, std::move(params)};
  return log;
}

RunLog train_run(const ModelSpec& spec, const TrainConfig& cfg,
                 const MarketParams& m, const LossWeights& w,
                 std::uint64_t seed, const CheckpointFn& checkpoint) {
  cfg.validate();
  m.validate();
  w.validate();
  const CollocationSet c =
      sample_collocation(seed, cfg.n_interior, cfg.n_boundary);
  const ParamVector init = init_params(spec.kind, seed, cfg.init);
  const LossFn loss = [&](std::span<const double> p) {
    return model_loss(spec, p, c, w, m);
  };
  GradFn grad;
  if (cfg.gradient == GradientMethod::ParameterShift) {
    if (spec.kind != ModelKind::QPINN &&
        spec.kind != ModelKind::QuantumInspired)
      throw ConfigError("parameter-shift gradients need a quantum model");
    grad = [&](std::span<const double> p) {
      return shift_loss_gradient(spec, p, c, w, m);
    };
  } else if (spec.kind == ModelKind::FullyConnected) {
    grad = [&](std::span<const double> p) {
      return fc_fd_gradient(spec, p, c, w, m, cfg.fd_step);
    };
  }
  return optimize(spec.kind, init.values, loss, cfg, seed, grad, checkpoint);
}

std::vector<double> shift_loss_gradient(const ModelSpec& spec,
                                        std::span<const double> params,
                                        const CollocationSet& c,
                                        const LossWeights& w,
                                        const MarketParams& m) {
  detail::check_params(spec.kind, params);
  if (spec.kind != ModelKind::QPINN && spec.kind != ModelKind::QuantumInspired)
    throw InvalidArgument("shift-rule gradients need a quantum model");
  std::vector<double> full(params.begin(), params.end());
  if (spec.kind == ModelKind::QuantumInspired) full.push_back(0.0);
  const std::vector<Dual2> pd(full.begin(), full.end());

  const std::size_t nd = c.interior.size(), nt = c.terminal.size(),
                    nl = c.lateral.size();
  // Unscaled outputs: (v, v_t, v_x, v_xx) per interior point, then the
  // terminal and lateral values.
  auto outputs = [&](const Circuit& circ) {
    Eigen::VectorXd o(4 * nd + nt + nl);
    for (std::size_t i = 0; i < nd; ++i) {
      const auto [t, x] = c.interior[i];
      const std::vector<Dual2> ax{Dual2::variable(x), Dual2(t)};
      const std::vector<Dual2> at{Dual2(x), Dual2::variable(t)};
      const Dual2 sx = expect_z0(run<Dual2>(circ, pd, ax));
      const Dual2 st = expect_z0(run<Dual2>(circ, pd, at));
      o.segment(4 * i, 4) << sx.v, st.d1, sx.d1, sx.d2;
    }
    for (std::size_t i = 0; i < nt; ++i) {
      const std::vector<double> in{c.terminal[i], m.T};
      o(4 * nd + i) = expect_z0(run<double>(circ, full, in));
    }
    for (std::size_t i = 0; i < nl; ++i) {
      const std::vector<double> in{1.0, c.lateral[i]};
      o(4 * nd + nt + i) = expect_z0(run<double>(circ, full, in));
    }
    return o;
  };

  // d loss / d output, including the output scale.
  const Circuit& circ = qpinn_circuit();
  const Eigen::VectorXd o = outputs(circ) * spec.output_scale;
  Eigen::VectorXd dl(o.size());
  const double k = k_constant(m), s2 = m.sharpe2();
  for (std::size_t i = 0; i < nd; ++i) {
    const double x = c.interior[i].second;
    const DerivBundle d{o(4 * i), o(4 * i + 1), o(4 * i + 2), o(4 * i + 3)};
    const double res = hjb_residual(d, x, m);
    const double f = 2.0 * w.w_d / static_cast<double>(nd) * res;
    dl(4 * i) = 0.0;
    dl(4 * i + 1) = f * d.v_xx;
    dl(4 * i + 2) = f * (d.v_xx * m.r * x - s2 * d.v_x);
    dl(4 * i + 3) = f * (d.v_t + d.v_x * m.r * x);
  }
  for (std::size_t i = 0; i < nt; ++i) {
    const double target = std::pow(c.terminal[i], m.gamma) / m.gamma;
    dl(4 * nd + i) =
        2.0 * w.w_1 / static_cast<double>(nt) * (o(4 * nd + i) - target);
  }
  for (std::size_t i = 0; i < nl; ++i) {
    const double target = std::exp(-k * (m.T - c.lateral[i])) / m.gamma;
    dl(4 * nd + nt + i) = 2.0 * w.w_2 / static_cast<double>(nl) *
                          (o(4 * nd + nt + i) - target);
  }

  const std::function<Eigen::VectorXd(const Circuit&)> g = outputs;
  std::vector<double> grad(params.size());
  for (std::size_t j = 0; j < params.size(); ++j) {
    const Eigen::VectorXd d =
        shift_derivative<Eigen::VectorXd>(circ, static_cast<int>(j), g);
    grad[j] = spec.output_scale * dl.dot(d);
  }
  return grad;
}

AggregateStats aggregate(std::span<const RunLog> runs) {
  if (runs.empty()) throw AggregationError("no runs to aggregate");
  const std::size_t n_epochs = runs.front().losses.size();
  for (const auto& r : runs)
    if (r.losses.size() != n_epochs)
      throw AggregationError("runs have different epoch counts");
  AggregateStats out;
  out.geomean.resize(n_epochs);
  out.geostd.resize(n_epochs);
  const double n = static_cast<double>(runs.size());
  for (std::size_t e = 0; e < n_epochs; ++e) {
    double mean = 0.0;
    for (const auto& r : runs) {
      const double l = r.losses[e].total;
      if (!(l > 0.0))
        throw AggregationError("loss " + std::to_string(l) + " at epoch " +
                               std::to_string(e) + " is not positive");
      mean += std::log(l);
    }
    mean /= n;
    double var = 0.0;
    for (const auto& r : runs) {
      const double d = std::log(r.losses[e].total) - mean;
      var += d * d;
    }
    out.geomean[e] = std::exp(mean);
    out.geostd[e] = std::exp(std::sqrt(var / n));
  }
  return out;
}

}  // namespace qtd
