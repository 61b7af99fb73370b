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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chanasm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Dims = std::vector<int>;

/// Raised when operand shapes or subsystem factorizations disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a precondition of an operation (non-finite
/// entries, wrong rank, failed physical constraint).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tolerances {
  double abs_tol = 1e-9;
  /// Multiplied by the largest singular value.
  double rank_rel_tol = 1e-8;
  double nnls_residual_tol = 1e-7;

  /// Throws InputError unless every tolerance is strictly positive.
  void validate() const;
};

/// Product of dimensions; empty list has product 1.
int dim_product(std::span<const int> dims);

/// Dense square operator on a tensor product of subsystems. Basis index of
/// |i1...ik> is i1*(d2...dk) + ... + ik (first factor most significant).
class Op {
 public:
  Op() = default;
  Op(Dims dims, CMatrix data);

  static Op zero(Dims dims);
  static Op identity(Dims dims);

  const Dims& dims() const { return dims_; }
  const CMatrix& data() const { return data_; }
  CMatrix& data() { return data_; }
  int side() const { return static_cast<int>(data_.rows()); }

  Complex trace() const { return data_.trace(); }
  Op adjoint() const { return Op(dims_, data_.adjoint()); }

  Op& operator+=(const Op& other);
  Op& operator-=(const Op& other);
  Op& operator*=(Complex s);

 private:
  Dims dims_;
  CMatrix data_;
};

Op operator+(Op a, const Op& b);
Op operator-(Op a, const Op& b);
Op operator*(Complex s, Op a);
/// Matrix product; dims must agree.
Op operator*(const Op& a, const Op& b);

class Ket {
 public:
  Ket() = default;
  Ket(Dims dims, CVector data);

  /// |i1 i2 ...> for the given digit string.
  static Ket basis(Dims dims, std::span<const int> digits);

  const Dims& dims() const { return dims_; }
  const CVector& data() const { return data_; }
  double norm() const { return data_.norm(); }
  Ket normalized() const;
  /// |k><k|.
  Op projector() const;

 private:
  Dims dims_;
  CVector data_;
};

Ket kron(const Ket& a, const Ket& b);
Op kron(const Op& a, const Op& b);
Op kron(std::span<const Op> factors);

/// Reduced operator on the subsystems in `keep` (original relative order).
Op partial_trace(const Op& a, std::vector<int> keep);

/// Reorders subsystems: factor i of the result is factor perm[i] of `a`.
Op permute_subsystems(const Op& a, std::span<const int> perm);

double max_abs(const CMatrix& m);
bool is_finite(const CMatrix& m);

bool is_hermitian(const Op& a, double tol);
/// Hermitian within tol and smallest eigenvalue >= -tol.
bool is_psd(const Op& a, double tol);
double min_eigenvalue(const Op& a);

/// Number of singular values above rank_rel_tol * sigma_max. Singular values
/// at the level of double rounding noise count as zero, so rank(0) = 0.
int rank(const CMatrix& a, double rank_rel_tol);
inline int rank(const Op& a, double rank_rel_tol) { return rank(a.data(), rank_rel_tol); }

/// Largest-magnitude eigenpair of a Hermitian operator.
struct Eigenpair {
  double value = 0.0;
  CVector vector;
};
Eigenpair principal_eigenpair(const Op& a);

/// True iff a = lambda * b with lambda > 0. Both inputs must have rank <= 1
/// (InputError otherwise). Two zero operators compare equal.
bool proportional_rank_one(const Op& a, const Op& b, const Tolerances& tol = {});

/// Real parts row-major, then imaginary parts row-major.
RVector real_vectorize(const CMatrix& a);
inline RVector real_vectorize(const Op& a) { return real_vectorize(a.data()); }

/// Orthonormal basis of ker(m), one basis vector per column.
RMatrix nullspace(const RMatrix& m, double rank_rel_tol);

enum class NnlsStatus { kConverged, kIterationLimit };

struct NnlsResult {
  RVector x;
  double residual = 0.0;
  NnlsStatus status = NnlsStatus::kConverged;
  int iterations = 0;
};

/// Lawson-Hanson active-set solver for min ||m x - b|| subject to x >= 0.
NnlsResult nnls(const RMatrix& m, const RVector& b, int max_iterations = 0);

}  // namespace chanasm
