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

#include "chanasm/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chanasm {

namespace {

// Singular values below this are indistinguishable from accumulated rounding.
constexpr double kNoiseFloor = 64 * std::numeric_limits<double>::epsilon();

void check_dims(const Dims& dims) {
  for (int d : dims) {
    if (d < 1) throw DimensionError("subsystem dimensions must be positive");
  }
}

// Digits of a flat index in the mixed radix given by dims (big-endian).
void to_digits(int index, const Dims& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

}  // namespace

void Tolerances::validate() const {
  if (!(abs_tol > 0) || !(rank_rel_tol > 0) || !(nnls_residual_tol > 0)) {
    throw InputError("tolerances must be strictly positive");
  }
}

int dim_product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

Op::Op(Dims dims, CMatrix data) : dims_(std::move(dims)), data_(std::move(data)) {
  check_dims(dims_);
  const int side = dim_product(dims_);
  if (data_.rows() != side || data_.cols() != side) {
    throw DimensionError("operator side " + std::to_string(data_.rows()) + "x" +
                         std::to_string(data_.cols()) + " does not match dims product " +
                         std::to_string(side));
  }
  if (!is_finite(data_)) throw InputError("operator has non-finite entries");
}

Op Op::zero(Dims dims) {
  const int side = dim_product(dims);
  return Op(std::move(dims), CMatrix::Zero(side, side));
}

Op Op::identity(Dims dims) {
  const int side = dim_product(dims);
  return Op(std::move(dims), CMatrix::Identity(side, side));
}

Op& Op::operator+=(const Op& other) {
  if (other.dims_ != dims_) throw DimensionError("operator sum with mismatched dims");
  data_ += other.data_;
  return *this;
}

Op& Op::operator-=(const Op& other) {
  if (other.dims_ != dims_) throw DimensionError("operator difference with mismatched dims");
  data_ -= other.data_;
  return *this;
}

Op& Op::operator*=(Complex s) {
  data_ *= s;
  return *this;
}

Op operator+(Op a, const Op& b) { return a += b; }
Op operator-(Op a, const Op& b) { return a -= b; }
Op operator*(Complex s, Op a) { return a *= s; }

Op operator*(const Op& a, const Op& b) {
  if (a.dims() != b.dims()) throw DimensionError("operator product with mismatched dims");
  return Op(a.dims(), a.data() * b.data());
}

Ket::Ket(Dims dims, CVector data) : dims_(std::move(dims)), data_(std::move(data)) {
  check_dims(dims_);
  if (data_.size() != dim_product(dims_)) {
    throw DimensionError("ket length does not match dims product");
  }
  if (!data_.allFinite()) throw InputError("ket has non-finite entries");
}

Ket Ket::basis(Dims dims, std::span<const int> digits) {
  if (digits.size() != dims.size()) throw DimensionError("basis digit count mismatch");
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= dims[k]) throw DimensionError("basis digit out of range");
    index = index * dims[k] + digits[k];
  }
  CVector v = CVector::Zero(dim_product(dims));
  v(index) = 1.0;
  return Ket(std::move(dims), std::move(v));
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InputError("cannot normalize the zero ket");
  return Ket(dims_, data_ / n);
}

Op Ket::projector() const { return Op(dims_, data_ * data_.adjoint()); }

Ket kron(const Ket& a, const Ket& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  CVector v(a.data().size() * b.data().size());
  for (Eigen::Index i = 0; i < a.data().size(); ++i) {
    v.segment(i * b.data().size(), b.data().size()) = a.data()(i) * b.data();
  }
  return Ket(std::move(dims), std::move(v));
}

Op kron(const Op& a, const Op& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const Eigen::Index nb = b.side();
  CMatrix m(a.side() * nb, a.side() * nb);
  for (Eigen::Index i = 0; i < a.side(); ++i) {
    for (Eigen::Index j = 0; j < a.side(); ++j) {
      m.block(i * nb, j * nb, nb, nb) = a.data()(i, j) * b.data();
    }
  }
  return Op(std::move(dims), std::move(m));
}

Op kron(std::span<const Op> factors) {
  if (factors.empty()) return Op::identity({});
  Op out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Op partial_trace(const Op& a, std::vector<int> keep) {
  const Dims& dims = a.dims();
  const int k = static_cast<int>(dims.size());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int q : keep) {
    if (q < 0 || q >= k) {
      throw DimensionError("partial_trace: subsystem index " + std::to_string(q) +
                           " out of range");
    }
  }
  Dims kept_dims;
  Dims traced_dims;
  std::vector<bool> is_kept(k, false);
  for (int q : keep) is_kept[q] = true;
  for (int q = 0; q < k; ++q) (is_kept[q] ? kept_dims : traced_dims).push_back(dims[q]);

  const int n = a.side();
  const int n_traced = dim_product(traced_dims);
  // Full indices grouped by their traced multi-index.
  std::vector<std::vector<std::pair<int, int>>> groups(n_traced);
  std::vector<int> digits;
  for (int i = 0; i < n; ++i) {
    to_digits(i, dims, digits);
    int kept_index = 0;
    int traced_index = 0;
    for (int q = 0; q < k; ++q) {
      if (is_kept[q]) {
        kept_index = kept_index * dims[q] + digits[q];
      } else {
        traced_index = traced_index * dims[q] + digits[q];
      }
    }
    groups[traced_index].emplace_back(i, kept_index);
  }
  const int n_kept = dim_product(kept_dims);
  CMatrix out = CMatrix::Zero(n_kept, n_kept);
  for (const auto& group : groups) {
    for (const auto& [i, ki] : group) {
      for (const auto& [j, kj] : group) out(ki, kj) += a.data()(i, j);
    }
  }
  return Op(std::move(kept_dims), std::move(out));
}

Op permute_subsystems(const Op& a, std::span<const int> perm) {
  const Dims& dims = a.dims();
  if (perm.size() != dims.size()) throw DimensionError("permutation length mismatch");
  std::vector<int> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (std::size_t q = 0; q < check.size(); ++q) {
    if (check[q] != static_cast<int>(q)) throw DimensionError("not a permutation");
  }
  Dims out_dims(dims.size());
  for (std::size_t q = 0; q < perm.size(); ++q) out_dims[q] = dims[perm[q]];

  // Source flat index for each destination flat index.
  const int n = a.side();
  std::vector<int> source(n);
  std::vector<int> digits;
  std::vector<int> src_digits(dims.size());
  for (int i = 0; i < n; ++i) {
    to_digits(i, out_dims, digits);
    for (std::size_t q = 0; q < perm.size(); ++q) src_digits[perm[q]] = digits[q];
    int s = 0;
    for (std::size_t q = 0; q < dims.size(); ++q) s = s * dims[q] + src_digits[q];
    source[i] = s;
  }
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = a.data()(source[i], source[j]);
  }
  return Op(std::move(out_dims), std::move(out));
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_finite(const CMatrix& m) { return m.allFinite(); }

bool is_hermitian(const Op& a, double tol) {
  return max_abs(a.data() - a.data().adjoint()) <= tol;
}

double min_eigenvalue(const Op& a) {
  if (a.side() == 0) return 0.0;
  const CMatrix h = 0.5 * (a.data() + a.data().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_psd(const Op& a, double tol) {
  return is_hermitian(a, tol) && min_eigenvalue(a) >= -tol;
}

int rank(const CMatrix& a, double rank_rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double cutoff = std::max(rank_rel_tol * smax, kNoiseFloor);
  return static_cast<int>((s.array() > cutoff).count());
}

Eigenpair principal_eigenpair(const Op& a) {
  const CMatrix h = 0.5 * (a.data() + a.data().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const auto& values = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (std::abs(values(i)) > std::abs(values(best))) best = i;
  }
  return {values(best), solver.eigenvectors().col(best)};
}

bool proportional_rank_one(const Op& a, const Op& b, const Tolerances& tol) {
  if (a.dims() != b.dims()) throw DimensionError("proportional_rank_one: dims mismatch");
  const int ra = rank(a, tol.rank_rel_tol);
  const int rb = rank(b, tol.rank_rel_tol);
  if (ra > 1 || rb > 1) throw InputError("proportional_rank_one: input of rank >= 2");
  if (ra == 0 || rb == 0) return ra == rb;
  const Eigenpair pa = principal_eigenpair(a);
  const Eigenpair pb = principal_eigenpair(b);
  if ((pa.value > 0) != (pb.value > 0)) return false;
  const double overlap = std::abs(pa.vector.dot(pb.vector));
  return overlap > 1.0 - tol.abs_tol;
}

RVector real_vectorize(const CMatrix& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  RVector v(2 * rows * cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      v(i * cols + j) = a(i, j).real();
      v(rows * cols + i * cols + j) = a(i, j).imag();
    }
  }
  return v;
}

RMatrix nullspace(const RMatrix& m, double rank_rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || n == 0) return RMatrix::Identity(n, n);
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double cutoff = std::max(rank_rel_tol * smax, kNoiseFloor);
  const Eigen::Index r = (s.array() > cutoff).count();
  return svd.matrixV().rightCols(n - r);
}

NnlsResult nnls(const RMatrix& m, const RVector& b, int max_iterations) {
  const Eigen::Index n = m.cols();
  if (m.rows() != b.size()) throw DimensionError("nnls: rhs length mismatch");
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);

  NnlsResult result;
  result.x = RVector::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 10 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, m.cwiseAbs().colwise().sum().maxCoeff()) *
                     static_cast<double>(std::max(m.rows(), n));

  auto solve_passive = [&](RVector& z) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) cols.push_back(j);
    }
    z = RVector::Zero(n);
    if (cols.empty()) return;
    RMatrix sub(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(c) = m.col(cols[c]);
    const RVector zs = sub.completeOrthogonalDecomposition().solve(b);
    for (std::size_t c = 0; c < cols.size(); ++c) z(cols[c]) = zs(c);
  };

  RVector& x = result.x;
  RVector w = m.transpose() * (b - m * x);
  while (true) {
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > tol && (best < 0 || w(j) > w(best))) best = j;
    }
    if (best < 0) break;
    if (result.iterations >= max_iterations) {
      result.status = NnlsStatus::kIterationLimit;
      break;
    }
    ++result.iterations;
    passive[best] = true;

    RVector z;
    solve_passive(z);
    while (true) {
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0) {
          const double denom = x(j) - z(j);
          alpha = std::min(alpha, denom > 0 ? x(j) / denom : 0.0);
        }
      }
      if (!std::isfinite(alpha)) break;
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
      solve_passive(z);
    }
    x = z;
    w = m.transpose() * (b - m * x);
  }
  result.residual = (m * x - b).norm();
  return result;
}

}  // namespace chanasm
