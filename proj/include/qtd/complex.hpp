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

#include <complex>

#include "qtd/dual.hpp"

namespace qtd {

/// Complex number over a Scalar; std::complex is only specified for
/// floating-point element types.
template <Scalar S>
struct Cplx {
  S re{};
  S im{};

  Cplx() = default;
  Cplx(S r, S i = S(0.0)) : re(r), im(i) {}  // NOLINT: implicit lift

  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
  friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(const Cplx& a, const S& s) {
    return {a.re * s, a.im * s};
  }
  friend Cplx operator*(const S& s, const Cplx& a) { return a * s; }

  Cplx conj() const { return {re, -im}; }
  S norm2() const { return re * re + im * im; }
};

/// e^{i phi}.
template <Scalar S>
Cplx<S> unit_phase(const S& phi) {
  using std::cos;
  using std::sin;
  return {cos(phi), sin(phi)};
}

inline std::complex<double> to_std(const Cplx<double>& z) {
  return {z.re, z.im};
}

}  // namespace qtd
