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

#include "qtd/models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <string>

#include "qtd/random.hpp"

namespace qtd {

namespace {

constexpr int kFcParams = (2 * kFcHidden + kFcHidden) +
                          (kFcLayers - 1) * (kFcHidden * kFcHidden + kFcHidden) +
                          (kFcHidden + 1);

int fc_in(int layer) { return layer == 0 ? 2 : kFcHidden; }
int fc_out(int layer) { return layer == kFcLayers ? 1 : kFcHidden; }

Circuit make_qpinn_circuit() {
  const Circuit base = rank1_circuit(2, 1);
  Circuit c(base.width(), 7, 2);
  const auto& gates = base.gates();
  // The rank-1 model closes with H on the ancilla; the entangler goes
  // right before it.
  for (std::size_t i = 0; i + 1 < gates.size(); ++i) c.add(gates[i]);
  Gate zz = Gate::rzz(2, 3, AngleExpr::param(kQpinnLambdaSlot));
  zz.controls = {Control{0, 1}};
  c.add(zz);
  c.add(gates.back());
  return c;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::QPINN:
      return "qpinn";
    case ModelKind::QuantumInspired:
      return "quantum_inspired";
    case ModelKind::Counterpart:
      return "counterpart";
    case ModelKind::FullyConnected:
      return "fully_connected";
  }
  return "?";
}

ModelKind model_kind_from_string(std::string_view name) {
  for (ModelKind k : {ModelKind::QPINN, ModelKind::QuantumInspired,
                      ModelKind::Counterpart, ModelKind::FullyConnected})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown model kind '" + std::string(name) + "'");
}

int param_count(ModelKind kind) {
  switch (kind) {
    case ModelKind::QPINN:
      return 7;
    case ModelKind::QuantumInspired:
    case ModelKind::Counterpart:
      return 6;
    case ModelKind::FullyConnected:
      return kFcParams;
  }
  return 0;
}

void ParamVector::validate() const { detail::check_params(kind, values); }

void detail::check_params(ModelKind kind, std::span<const double> params) {
  if (params.size() != static_cast<std::size_t>(param_count(kind)))
    throw InvalidArgument(std::string(to_string(kind)) + " expects " +
                          std::to_string(param_count(kind)) +
                          " parameters, got " + std::to_string(params.size()));
}

const Circuit& qpinn_circuit() {
  static const Circuit circuit = make_qpinn_circuit();
  return circuit;
}

BoundCircuit qpinn_build(std::span<const double> params) {
  detail::check_params(ModelKind::QPINN, params);
  return {qpinn_circuit(), {params.begin(), params.end()}, 1.0};
}

double model_value(const ModelSpec& spec, std::span<const double> params,
                   double t, double x) {
  return spec.output_scale * model_core<double>(spec.kind, params, t, x);
}

DerivBundle model_bundle(const ModelSpec& spec,
                         std::span<const double> params, double t, double x) {
  const Dual2 along_x = model_core<Dual2>(spec.kind, params, Dual2(t),
                                          Dual2::variable(x));
  const Dual2 along_t = model_core<Dual2>(spec.kind, params,
                                          Dual2::variable(t), Dual2(x));
  const double s = spec.output_scale;
  return {s * along_x.v, s * along_t.d1, s * along_x.d1, s * along_x.d2};
}

namespace {

using Mat = Eigen::MatrixXd;
using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t fc_offset(int layer) {
  std::size_t off = 0;
  for (int l = 0; l < layer; ++l)
    off += static_cast<std::size_t>(fc_out(l) * fc_in(l) + fc_out(l));
  return off;
}

// Activations of a batch at one layer boundary: rows are neurons, columns
// points. The d* matrices hold the x, xx and t derivatives and stay empty
// for value-only batches.
struct FcBatch {
  Mat a, dx, dxx, dt;
  bool derivs = false;
};

FcBatch fc_input(std::span<const std::pair<double, double>> points,
                 bool derivs) {
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  FcBatch b;
  b.derivs = derivs;
  b.a.resize(2, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    b.a(0, j) = points[j].first;
    b.a(1, j) = points[j].second;
  }
  if (derivs) {
    b.dx = Mat::Zero(2, n);
    b.dxx = Mat::Zero(2, n);
    b.dt = Mat::Zero(2, n);
    b.dx.row(1).setOnes();
    b.dt.row(0).setOnes();
  }
  return b;
}

void fc_layer(std::span<const double> params, int layer, FcBatch& b) {
  const int in = fc_in(layer), out = fc_out(layer);
  const std::size_t off = fc_offset(layer);
  const Eigen::Map<const RowMat> W(params.data() + off, out, in);
  const Eigen::Map<const Eigen::VectorXd> bias(params.data() + off + out * in,
                                               out);
  Mat z = W * b.a;
  z.colwise() += bias;
  if (layer == kFcLayers) {
    b.a = std::move(z);
    if (b.derivs) {
      b.dx = W * b.dx;
      b.dxx = W * b.dxx;
      b.dt = W * b.dt;
    }
    return;
  }
  b.a = z.array().tanh().matrix();
  if (b.derivs) {
    const Mat zx = W * b.dx, zxx = W * b.dxx, zt = W * b.dt;
    const Mat g = 1.0 - b.a.array().square();  // tanh'
    b.dx = (g.array() * zx.array()).matrix();
    b.dxx = (g.array() * zxx.array() -
             2.0 * b.a.array() * g.array() * zx.array().square())
                .matrix();
    b.dt = (g.array() * zt.array()).matrix();
  }
}

std::vector<DerivBundle> fc_bundles(const FcBatch& b, double scale) {
  std::vector<DerivBundle> out(static_cast<std::size_t>(b.a.cols()));
  for (Eigen::Index j = 0; j < b.a.cols(); ++j)
    out[j] = {scale * b.a(0, j), scale * b.dt(0, j), scale * b.dx(0, j),
              scale * b.dxx(0, j)};
  return out;
}

std::vector<std::pair<double, double>> boundary_points(
    const CollocationSet& c, const MarketParams& m) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(c.terminal.size() + c.lateral.size());
  for (double x : c.terminal) pts.emplace_back(m.T, x);
  for (double t : c.lateral) pts.emplace_back(t, 1.0);
  return pts;
}

// Loss from the output-layer batches of the interior and boundary points.
LossBreakdown fc_loss(const FcBatch& interior, const FcBatch& boundary,
                      double scale, const CollocationSet& c,
                      const LossWeights& w, const MarketParams& m) {
  const std::vector<DerivBundle> bundles = fc_bundles(interior, scale);
  const std::size_t nt = c.terminal.size();
  std::vector<double> terminal(nt), lateral(c.lateral.size());
  for (std::size_t i = 0; i < nt; ++i) terminal[i] = scale * boundary.a(0, i);
  for (std::size_t i = 0; i < lateral.size(); ++i)
    lateral[i] = scale * boundary.a(0, static_cast<Eigen::Index>(nt + i));
  return loss_from_outputs(bundles, terminal, lateral, c, w, m);
}

}  // namespace

void fc_evaluate(std::span<const double> params,
                 std::span<const std::pair<double, double>> points,
                 std::vector<double>* values,
                 std::vector<DerivBundle>* bundles, double output_scale) {
  detail::check_params(ModelKind::FullyConnected, params);
  FcBatch b = fc_input(points, bundles != nullptr);
  for (int layer = 0; layer <= kFcLayers; ++layer) fc_layer(params, layer, b);
  if (values) {
    values->resize(points.size());
    for (std::size_t j = 0; j < points.size(); ++j)
      (*values)[j] = output_scale * b.a(0, static_cast<Eigen::Index>(j));
  }
  if (bundles) *bundles = fc_bundles(b, output_scale);
}

std::vector<double> fc_fd_gradient(const ModelSpec& spec,
                                   std::span<const double> params,
                                   const CollocationSet& c,
                                   const LossWeights& w, const MarketParams& m,
                                   double h) {
  if (spec.kind != ModelKind::FullyConnected)
    throw InvalidArgument("fc_fd_gradient needs a fully connected model");
  detail::check_params(spec.kind, params);
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be > 0");
  const auto bnd = boundary_points(c, m);
  // Batches entering each layer at the unperturbed parameters.
  std::vector<FcBatch> in_int{fc_input(c.interior, true)};
  std::vector<FcBatch> in_bnd{fc_input(bnd, false)};
  for (int layer = 0; layer < kFcLayers; ++layer) {
    in_int.push_back(in_int.back());
    fc_layer(params, layer, in_int.back());
    in_bnd.push_back(in_bnd.back());
    fc_layer(params, layer, in_bnd.back());
  }
  std::vector<double> p(params.begin(), params.end());
  std::vector<double> grad(p.size());
  auto loss_from = [&](int first_layer) {
    FcBatch bi = in_int[first_layer], bb = in_bnd[first_layer];
    for (int layer = first_layer; layer <= kFcLayers; ++layer) {
      fc_layer(p, layer, bi);
      fc_layer(p, layer, bb);
    }
    return fc_loss(bi, bb, spec.output_scale, c, w, m).total;
  };
  int layer = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (i >= fc_offset(layer + 1)) ++layer;
    const double pi = p[i];
    const double hi = h * std::max(1.0, std::abs(pi));
    p[i] = pi + hi;
    const double fp = loss_from(layer);
    p[i] = pi - hi;
    const double fm = loss_from(layer);
    p[i] = pi;
    grad[i] = (fp - fm) / (2.0 * hi);
  }
  return grad;
}

ModelHandle make_handle(const ModelSpec& spec, std::vector<double> params) {
  detail::check_params(spec.kind, params);
  auto shared = std::make_shared<const std::vector<double>>(std::move(params));
  return {[spec, shared](double t, double x) {
            return model_bundle(spec, *shared, t, x);
          },
          [spec, shared](double t, double x) {
            return model_value(spec, *shared, t, x);
          }};
}

LossBreakdown model_loss(const ModelSpec& spec, std::span<const double> params,
                         const CollocationSet& c, const LossWeights& w,
                         const MarketParams& m) {
  detail::check_params(spec.kind, params);
  if (spec.kind == ModelKind::FullyConnected) {
    FcBatch bi = fc_input(c.interior, true);
    FcBatch bb = fc_input(boundary_points(c, m), false);
    for (int layer = 0; layer <= kFcLayers; ++layer) {
      fc_layer(params, layer, bi);
      fc_layer(params, layer, bb);
    }
    return fc_loss(bi, bb, spec.output_scale, c, w, m);
  }
  std::vector<DerivBundle> interior;
  std::vector<double> terminal, lateral;
  interior.reserve(c.interior.size());
  for (const auto& [t, x] : c.interior)
    interior.push_back(model_bundle(spec, params, t, x));
  for (double x : c.terminal)
    terminal.push_back(model_value(spec, params, m.T, x));
  for (double t : c.lateral)
    lateral.push_back(model_value(spec, params, t, 1.0));
  return loss_from_outputs(interior, terminal, lateral, c, w, m);
}

ParamVector init_params(ModelKind kind, std::uint64_t seed,
                        const InitOptions& opts) {
  if (!(opts.angle_range >= 0.0 && opts.coeff_range >= 0.0))
    throw InvalidArgument("init ranges must be nonnegative");
  Rng rng = make_rng(seed, 2);
  ParamVector out{kind, std::vector<double>(param_count(kind), 0.0)};
  auto& v = out.values;
  switch (kind) {
    case ModelKind::QPINN:
      for (int i = 0; i < 6; ++i)
        v[i] = uniform(rng, -opts.angle_range, opts.angle_range);
      v[kQpinnLambdaSlot] = 0.0;
      break;
    case ModelKind::QuantumInspired:
      for (auto& p : v)
        p = uniform(rng, -opts.angle_range, opts.angle_range);
      break;
    case ModelKind::Counterpart:
      for (auto& p : v) p = uniform(rng, -opts.coeff_range, opts.coeff_range);
      break;
    case ModelKind::FullyConnected: {
      std::size_t off = 0;
      for (int layer = 0; layer <= kFcLayers; ++layer) {
        const int in = fc_in(layer), out_n = fc_out(layer);
        const double bound = std::sqrt(6.0 / (in + out_n));
        for (int i = 0; i < in * out_n; ++i)
          v[off + i] = uniform(rng, -bound, bound);
        off += static_cast<std::size_t>(in * out_n + out_n);
      }
      break;
    }
  }
  return out;
}

std::vector<std::pair<int, int>> param_groups(ModelKind kind) {
  switch (kind) {
    case ModelKind::QPINN:
      return {{0, 3}, {3, 3}, {6, 1}};
    case ModelKind::QuantumInspired:
    case ModelKind::Counterpart:
      return {{0, 3}, {3, 3}};
    case ModelKind::FullyConnected: {
      std::vector<std::pair<int, int>> g;
      int off = 0;
      for (int layer = 0; layer <= kFcLayers; ++layer) {
        const int in = fc_in(layer), out = fc_out(layer);
        g.emplace_back(off, out * in);
        g.emplace_back(off + out * in, out);
        off += out * in + out;
      }
      return g;
    }
  }
  return {};
}

}  // namespace qtd
