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

#include "qtd/poly.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "qtd/random.hpp"

namespace qtd {

namespace fault {
namespace {
std::atomic<bool> flip_parity_sign{false};
}  // namespace
void set_parity_split_sign_flip(bool on) { flip_parity_sign = on; }
bool parity_split_sign_flip() { return flip_parity_sign; }
}  // namespace fault

std::pair<UnivariatePoly, UnivariatePoly> parity_split(
    const UnivariatePoly& p) {
  UnivariatePoly odd{std::vector<double>(p.coeffs.size(), 0.0)};
  UnivariatePoly even{std::vector<double>(p.coeffs.size(), 0.0)};
  const double odd_sign = fault::parity_split_sign_flip() ? -2.0 : 2.0;
  for (std::size_t n = 0; n < p.coeffs.size(); ++n) {
    if (n % 2 == 1) {
      odd.coeffs[n] = odd_sign * p.coeffs[n];
    } else {
      even.coeffs[n] = 2.0 * p.coeffs[n];
    }
  }
  return {odd, even};
}

double sup_norm(const UnivariatePoly& p, int points) {
  if (points < 2) throw InvalidArgument("sup_norm needs >= 2 points");
  double m = 0.0;
  for (int k = 0; k < points; ++k) {
    const double x = -1.0 + 2.0 * k / (points - 1);
    m = std::max(m, std::abs(p.eval(x)));
  }
  return m;
}

void TdPoly::validate() const {
  if (R < 1 || D < 1 || L < 0) throw InvalidArgument("TdPoly needs R, D >= 1");
  if (lambdas.size() != static_cast<std::size_t>(R))
    throw InvalidArgument("TdPoly needs R lambdas");
  if (factors.size() != static_cast<std::size_t>(R))
    throw InvalidArgument("TdPoly needs R factor rows");
  for (const auto& row : factors) {
    if (row.size() != static_cast<std::size_t>(D))
      throw InvalidArgument("every TdPoly factor row needs D polynomials");
    for (const auto& f : row)
      if (f.degree() > L)
        throw InvalidArgument("TdPoly factor degree exceeds L");
  }
}

double TdPoly::eval(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(D))
    throw InvalidArgument("TdPoly evaluated at a point of wrong dimension");
  double sum = 0.0;
  for (int r = 0; r < R; ++r) {
    double prod = lambdas[r];
    for (int j = 0; j < D; ++j) prod *= factors[r][j].eval(x[j]);
    sum += prod;
  }
  return sum;
}

void MonomialList::validate(int D, int L) const {
  std::set<std::vector<int>> seen;
  for (const auto& m : entries) {
    if (m.n.size() != static_cast<std::size_t>(D))
      throw InvalidArgument("monomial multi-index has wrong length");
    for (int e : m.n)
      if (e < 0 || e > L)
        throw InvalidArgument("monomial exponent outside [0, L]");
    if (!seen.insert(m.n).second)
      throw InvalidArgument("duplicate monomial multi-index");
  }
}

double MonomialList::eval(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& m : entries) {
    if (m.n.size() != x.size())
      throw InvalidArgument("monomial evaluated at a point of wrong dimension");
    double term = m.c;
    for (std::size_t j = 0; j < x.size(); ++j)
      term *= std::pow(x[j], m.n[j]);
    sum += term;
  }
  return sum;
}

double MonomialList::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.c));
  return m;
}

MonomialList expand_td(const TdPoly& p) {
  p.validate();
  const std::size_t base = static_cast<std::size_t>(p.L) + 1;
  std::size_t total = 1;
  for (int j = 0; j < p.D; ++j) {
    if (total > kMaxTensorEntries / base)
      throw SizeError("coefficient tensor exceeds " +
                      std::to_string(kMaxTensorEntries) + " entries");
    total *= base;
  }
  auto coeff = [](const UnivariatePoly& f, int n) {
    return n < static_cast<int>(f.coeffs.size()) ? f.coeffs[n] : 0.0;
  };
  MonomialList out;
  out.entries.reserve(total);
  std::vector<int> n(p.D, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int j = p.D - 1; j >= 0; --j) {
      n[j] = static_cast<int>(rest % base);
      rest /= base;
    }
    double c = 0.0;
    for (int r = 0; r < p.R; ++r) {
      double prod = p.lambdas[r];
      for (int j = 0; j < p.D; ++j) prod *= coeff(p.factors[r][j], n[j]);
      c += prod;
    }
    out.entries.push_back({n, c});
  }
  return out;
}

std::complex<double> qsp_value(std::span<const double> theta, double x) {
  return to_std(qsp_amplitude<double>(theta, x));
}

std::vector<double> chebyshev_nodes(int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k)
    x[k] = std::cos(std::numbers::pi * (k + 0.5) / n);
  return x;
}

PolyFit extract_polynomial(const std::function<double(double)>& f, int L) {
  if (L < 0) throw InvalidArgument("degree must be >= 0");
  const auto nodes = chebyshev_nodes(L + 1);
  Eigen::MatrixXd v(L + 1, L + 1);
  Eigen::VectorXd y(L + 1);
  for (int k = 0; k <= L; ++k) {
    double pw = 1.0;
    for (int n = 0; n <= L; ++n) {
      v(k, n) = pw;
      pw *= nodes[k];
    }
    y(k) = f(nodes[k]);
  }
  const Eigen::VectorXd c = v.colPivHouseholderQr().solve(y);
  PolyFit fit;
  fit.poly.coeffs.assign(c.data(), c.data() + c.size());
  for (int k = 0; k < 257; ++k) {
    const double x = -1.0 + 2.0 * k / 256.0;
    fit.residual = std::max(fit.residual, std::abs(fit.poly.eval(x) - f(x)));
  }
  return fit;
}

namespace {

constexpr double kSupSlack = 1e-12;

// Residuals [Re a(x_k) - P(x_k), Im a(x_k)] and their Jacobian.
void chain_residuals(const UnivariatePoly& target,
                     const std::vector<double>& nodes,
                     const Eigen::VectorXd& theta, Eigen::VectorXd& r,
                     Eigen::MatrixXd* jac) {
  const auto m = static_cast<std::size_t>(theta.size());
  const auto n = nodes.size();
  r.resize(static_cast<Eigen::Index>(2 * n));
  std::vector<double> th(theta.data(), theta.data() + m);
  for (std::size_t k = 0; k < n; ++k) {
    const auto a = qsp_amplitude<double>(th, nodes[k]);
    r(2 * k) = a.re - target.eval(nodes[k]);
    r(2 * k + 1) = a.im;
  }
  if (!jac) return;
  jac->resize(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(m));
  std::vector<Dual2> td(m);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q)
      td[q] = q == p ? Dual2::variable(th[q]) : Dual2::constant(th[q]);
    for (std::size_t k = 0; k < n; ++k) {
      const auto a = qsp_amplitude<Dual2>(td, Dual2::constant(nodes[k]));
      (*jac)(2 * k, p) = a.re.d1;
      (*jac)(2 * k + 1, p) = a.im.d1;
    }
  }
}

double max_abs(const Eigen::VectorXd& r) {
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

// Damped Gauss-Newton (Levenberg-Marquardt) from one start.
double levenberg_marquardt(const UnivariatePoly& target,
                           const std::vector<double>& nodes,
                           Eigen::VectorXd& theta, int iterations,
                           double stop) {
  Eigen::VectorXd r, r_try;
  Eigen::MatrixXd j;
  chain_residuals(target, nodes, theta, r, &j);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < iterations && max_abs(r) > stop; ++it) {
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    Eigen::MatrixXd a = jtj;
    a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
    const Eigen::VectorXd step = a.ldlt().solve(-g);
    const Eigen::VectorXd trial = theta + step;
    chain_residuals(target, nodes, trial, r_try, nullptr);
    const double c_try = r_try.squaredNorm();
    if (c_try < cost) {
      theta = trial;
      cost = c_try;
      chain_residuals(target, nodes, theta, r, &j);
      mu = std::max(mu / 3.0, 1e-15);
    } else {
      mu = std::min(mu * 4.0, 1e12);
    }
  }
  return max_abs(r);
}

}  // namespace

QspAngles synthesize_chain(const UnivariatePoly& target, int layers,
                           const SynthesisOptions& opts) {
  if (layers < 0) throw InvalidArgument("layers must be >= 0");
  if (target.degree() > layers) {
    for (std::size_t n = layers + 1; n < target.coeffs.size(); ++n)
      if (target.coeffs[n] != 0.0)
        throw InvalidArgument("target degree exceeds the chain length");
  }
  for (std::size_t n = 0; n < target.coeffs.size(); ++n)
    if (static_cast<int>(n % 2) != layers % 2 && target.coeffs[n] != 0.0)
      throw InvalidArgument("target parity differs from the chain parity");
  if (sup_norm(target) > 1.0 + kSupSlack)
    throw BoundError("chain target exceeds 1 in sup norm");
  // Enough nodes to pin down both parity-restricted polynomials.
  const auto nodes = chebyshev_nodes(4 * layers + 4);
  const double stop = 1e-2 * opts.tolerance;
  Rng rng = make_rng(opts.seed, 0x5157);
  Eigen::VectorXd best;
  double best_res = INFINITY;
  for (int attempt = 0; attempt < opts.restarts; ++attempt) {
    Eigen::VectorXd theta(layers + 1);
    for (int p = 0; p <= layers; ++p)
      theta(p) = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const double res =
        levenberg_marquardt(target, nodes, theta, opts.iterations, stop);
    if (res < best_res) {
      best_res = res;
      best = theta;
    }
    if (best_res <= stop) break;
  }
  if (!(best_res <= opts.tolerance))
    throw SynthesisError("QSP synthesis reached residual " +
                         std::to_string(best_res) + " for " +
                         std::to_string(layers) + " layers");
  return QspAngles(best.data(), best.data() + best.size());
}

AnglePair synthesize_angles(const UnivariatePoly& target, int L,
                            const SynthesisOptions& opts) {
  if (L < 1) throw InvalidArgument("synthesize_angles needs L >= 1");
  for (std::size_t n = L + 1; n < target.coeffs.size(); ++n)
    if (target.coeffs[n] != 0.0)
      throw InvalidArgument("target degree exceeds L");
  if (sup_norm(target) > 0.5 + kSupSlack)
    throw BoundError("target exceeds 1/2 in sup norm on [-1, 1]");
  auto [odd, even] = parity_split(target);
  UnivariatePoly top = L % 2 ? odd : even;
  UnivariatePoly low = L % 2 ? even : odd;
  top.coeffs.resize(L + 1, 0.0);
  low.coeffs.resize(L, 0.0);
  SynthesisOptions sub = opts;
  AnglePair out;
  out.theta2 = synthesize_chain(top, L, sub);
  sub.seed = opts.seed + 1;
  out.theta1 = synthesize_chain(low, L - 1, sub);
  double worst = 0.0;
  for (double x : chebyshev_nodes(4 * L + 4)) {
    const double v = 0.5 * (qsp_value(out.theta1, x).real() +
                            qsp_value(out.theta2, x).real());
    worst = std::max(worst, std::abs(v - target.eval(x)));
  }
  if (!(worst < opts.tolerance))
    throw SynthesisError("combined model misses the target by " +
                         std::to_string(worst));
  return out;
}

}  // namespace qtd
