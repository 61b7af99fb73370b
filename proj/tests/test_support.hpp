// Copyright 2026 The chanasm Authors
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

#include <cmath>
#include <initializer_list>
#include <random>
#include <vector>

#include "chanasm/assemblage.hpp"
#include "chanasm/quantum.hpp"

namespace chanasm::testing {

inline CMatrix random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n;
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int d) {
  const CMatrix g = random_complex(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

inline CMatrix random_unitary(std::mt19937_64& rng, int d) {
  return random_complex(rng, d, d).householderQr().householderQ();
}

inline CMatrix random_density(std::mt19937_64& rng, int d) {
  const CMatrix g = random_complex(rng, d, d);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

/// Haar-ish isometry cut into k Kraus operators; k * dout must cover din.
inline KrausChannel random_channel(std::mt19937_64& rng, int din, int dout, int k) {
  while (k * dout < din) ++k;
  const CMatrix g = random_complex(rng, k * dout, din);
  const CMatrix v = g.householderQr().householderQ() * CMatrix::Identity(k * dout, din);
  KrausChannel ch{{din}, {dout}, {}};
  for (int i = 0; i < k; ++i) ch.kraus.push_back(v.middleRows(i * dout, dout));
  return ch;
}

/// Random rank-one projective measurement with the given settings.
inline Povm random_projective(std::mt19937_64& rng, int d, int settings) {
  std::vector<std::vector<Ket>> bases;
  for (int s = 0; s < settings; ++s) {
    const CMatrix u = random_unitary(rng, d);
    std::vector<Ket> basis;
    for (int i = 0; i < d; ++i) basis.emplace_back(Dims{d}, u.col(i));
    bases.push_back(basis);
  }
  return Povm::projective(bases);
}

inline Ket make_ket(Dims dims, std::initializer_list<Complex> v) {
  CVector d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (Complex x : v) d(i++) = x;
  return Ket(std::move(dims), d);
}

inline Op make_op(Dims dims, std::initializer_list<std::initializer_list<Complex>> rows) {
  const int n = static_cast<int>(rows.size());
  CMatrix m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (Complex x : row) m(i, j++) = x;
    ++i;
  }
  return Op(std::move(dims), m);
}

inline const double kSqrt2 = std::sqrt(2.0);

inline Scenario two_party_scenario(int d_c = 2, int d_ct = 2) {
  Scenario sc;
  sc.parties = 2;
  sc.settings = {2, 2};
  sc.outcomes = {2, 2};
  sc.d_c = d_c;
  sc.d_ct = d_ct;
  return sc;
}

inline Ket phi_plus() { return make_ket({2, 2}, {1 / kSqrt2, 0, 0, 1 / kSqrt2}); }
inline Ket psi_plus() { return make_ket({2, 2}, {0, 1 / kSqrt2, 1 / kSqrt2, 0}); }
inline Ket plus_plus() { return make_ket({2, 2}, {0.5, 0.5, 0.5, 0.5}); }
inline Ket minus_minus() { return make_ket({2, 2}, {0.5, -0.5, -0.5, 0.5}); }

/// Choi members of the controlled-NOT example in flat order, with the
/// (.,.|1,0) weights scaled by b, e, c, f.
inline std::vector<Op> example1_members(double b = 1, double c = 1, double e = 1, double f = 1) {
  const Ket phi = phi_plus();
  const Ket vphi = psi_plus();
  const Ket xi = plus_plus();
  const Ket theta = minus_minus();
  const Op zero = Op::zero({2, 2});
  auto m = [](double w, const Ket& k) { return Complex(w) * k.projector(); };
  return {
      m(0.5, phi),      zero,              zero,             m(0.5, vphi),
      m(0.25, phi),     m(0.25, phi),      m(0.25, vphi),    m(0.25, vphi),
      m(0.25 * b, phi), m(0.25 * e, vphi), m(0.25 * c, phi), m(0.25 * f, vphi),
      m(0.25, xi),      m(0.25, theta),    m(0.25, theta),   m(0.25, xi),
  };
}

inline Assemblage example1_assemblage() {
  return Assemblage(two_party_scenario(), {2, 2}, example1_members());
}

/// Computational and Hadamard bases.
inline Povm z_x_povm() {
  const Ket zero = make_ket({2}, {1, 0});
  const Ket one = make_ket({2}, {0, 1});
  const Ket plus = make_ket({2}, {1 / kSqrt2, 1 / kSqrt2});
  const Ket minus = make_ket({2}, {1 / kSqrt2, -1 / kSqrt2});
  return Povm::projective({{zero, one}, {plus, minus}});
}

/// (|0000> + |0011> + |1110> + |1101>) / 2 on A B C~ C.
inline Ket example1_state() {
  CVector v = CVector::Zero(16);
  v(0b0000) = v(0b0011) = v(0b1110) = v(0b1101) = 0.5;
  return Ket({2, 2, 2, 2}, v);
}

}  // namespace chanasm::testing
