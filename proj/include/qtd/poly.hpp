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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qtd/complex.hpp"

namespace qtd {

/// p(x) = sum_n coeffs[n] x^n.
struct UnivariatePoly {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  template <Scalar S>
  S eval(const S& x) const {
    S acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) =
      default;
};

/// p_odd(x) = p(x) - p(-x) and p_even(x) = p(x) + p(-x), so that
/// p = (p_odd + p_even) / 2.
std::pair<UnivariatePoly, UnivariatePoly> parity_split(
    const UnivariatePoly& p);

/// max |p(x)| over `points` equally spaced nodes of [-1, 1].
double sup_norm(const UnivariatePoly& p, int points = 512);

/// sum_r lambdas[r] prod_j factors[r][j](x_j).
struct TdPoly {
  int R = 0;
  int D = 0;
  int L = 0;
  std::vector<double> lambdas;
  std::vector<std::vector<UnivariatePoly>> factors;

  /// Checks shapes and degrees; throws InvalidArgument.
  void validate() const;
  double eval(std::span<const double> x) const;
};

struct Monomial {
  std::vector<int> n;
  double c = 0.0;
};

struct MonomialList {
  std::vector<Monomial> entries;

  /// Distinct multi-indices of length D with entries in [0, L].
  void validate(int D, int L) const;
  double eval(std::span<const double> x) const;
  double max_abs_coeff() const;
};

inline constexpr std::size_t kMaxTensorEntries = 1'000'000;

/// Every entry c_n = sum_r lambda_r prod_j [x^{n_j}] p_{r,j} of the
/// (L+1)^D coefficient tensor, multi-indices in lexicographic order.
MonomialList expand_td(const TdPoly& p);

/// <+| U_theta(x) |+> for the chain RZ(theta_0), S(x), ..., S(x),
/// RZ(theta_L) with S(x) = RX(-2 arccos x).
template <Scalar S>
Cplx<S> qsp_amplitude(std::span<const S> theta, const S& x) {
  using std::sqrt;
  if (theta.empty()) throw InvalidArgument("QSP chain needs >= 1 angle");
  if (!(std::abs(value_of(x)) <= 1.0))
    throw DomainError("QSP input must satisfy |x| <= 1");
  const S c = x;
  S s2 = 1.0 - x * x;
  S s(0.0);
  if constexpr (std::same_as<S, double>) {
    s = std::sqrt(std::max(0.0, s2));
  } else {
    s = sqrt(s2);
  }
  const S h(0.70710678118654752440);
  Cplx<S> a0{h}, a1{h};
  auto rz = [&](const S& angle) {
    const S half = angle * 0.5;
    a0 = unit_phase<S>(-half) * a0;
    a1 = unit_phase<S>(half) * a1;
  };
  rz(theta[0]);
  for (std::size_t j = 1; j < theta.size(); ++j) {
    const Cplx<S> b0 = Cplx<S>{c} * a0 + Cplx<S>{S(0.0), s} * a1;
    const Cplx<S> b1 = Cplx<S>{S(0.0), s} * a0 + Cplx<S>{c} * a1;
    a0 = b0;
    a1 = b1;
    rz(theta[j]);
  }
  return (a0 + a1) * h;
}

std::complex<double> qsp_value(std::span<const double> theta, double x);

struct PolyFit {
  UnivariatePoly poly;
  /// max |fit - f| on 257 equally spaced points of [-1, 1].
  double residual = 0.0;
};

/// Interpolates f at L+1 Chebyshev nodes and measures the misfit on a
/// fresh grid; a tiny residual certifies f is a polynomial of degree <= L.
PolyFit extract_polynomial(const std::function<double(double)>& f, int L);

using QspAngles = std::vector<double>;

struct AnglePair {
  QspAngles theta1;  // L angles, parity L-1 branch
  QspAngles theta2;  // L+1 angles, parity L branch
};

struct SynthesisOptions {
  int restarts = 16;
  int iterations = 500;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
};

/// Angles with <+|U_theta(x)|+> = target(x) exactly (real, zero imaginary
/// part), using `layers` encoding gates. The target must have parity
/// `layers` mod 2, degree <= layers and |target| <= 1.
QspAngles synthesize_chain(const UnivariatePoly& target, int layers,
                           const SynthesisOptions& opts = {});

/// Angles for the three-qubit Hadamard-test model with
/// (Re a(theta1, x) + Re a(theta2, x)) / 2 = target(x). Needs L >= 1,
/// deg target <= L and |target| <= 1/2 on [-1, 1].
AnglePair synthesize_angles(const UnivariatePoly& target, int L,
                            const SynthesisOptions& opts = {});

/// Chebyshev nodes cos(pi (k + 1/2) / n), k = 0..n-1.
std::vector<double> chebyshev_nodes(int n);

namespace fault {
/// Negates p_odd in parity_split. Used by the verification suites to check
/// that an injected error is detected.
void set_parity_split_sign_flip(bool on);
bool parity_split_sign_flip();
}  // namespace fault

}  // namespace qtd
