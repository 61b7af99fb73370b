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


#include <random>

#include <gtest/gtest.h>

#include "chanasm/opcore.hpp"
#include "test_support.hpp"

namespace chanasm {
namespace {

using testing::kSqrt2;
using testing::make_ket;
using testing::make_op;

const Op kZeroProj = make_op({2}, {{1, 0}, {0, 0}});
const Op kOneProj = make_op({2}, {{0, 0}, {0, 1}});
const Op kSigmaX = make_op({2}, {{0, 1}, {1, 0}});

TEST(Kron, BasisProjectorsFollowBigEndianOrder) {
  const Op k = kron(kZeroProj, kOneProj);
  EXPECT_EQ(k.dims(), (Dims{2, 2}));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ(k.data(), expected);
}

TEST(Kron, IdentitiesGiveIdentity) {
  EXPECT_EQ(kron(Op::identity({2}), Op::identity({2})).data(), CMatrix::Identity(4, 4));
}

TEST(Kron, PauliXWithProjector) {
  const CMatrix m = kron(kSigmaX, kZeroProj).data();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expected = (i == 0 && j == 2) || (i == 2 && j == 0) ? 1.0 : 0.0;
      EXPECT_EQ(m(i, j), Complex(expected)) << i << "," << j;
    }
  }
}

TEST(Kron, KetMatchesProjectorKron) {
  const Ket a = make_ket({2}, {0.6, Complex(0, 0.8)});
  const Ket b = make_ket({3}, {1, 2, 3}).normalized();
  EXPECT_LT(max_abs(kron(a, b).projector().data() - kron(a.projector(), b.projector()).data()), 1e-14);
  EXPECT_EQ(kron(a, b).dims(), (Dims{2, 3}));
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
  const Ket phi = make_ket({2, 2}, {1 / kSqrt2, 0, 0, 1 / kSqrt2});
  const Op r = partial_trace(phi.projector(), {0});
  EXPECT_LT(max_abs(r.data() - 0.5 * CMatrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, XiReducesToPlus) {
  const Ket phi = make_ket({2, 2}, {1 / kSqrt2, 0, 0, 1 / kSqrt2});
  const Ket vphi = make_ket({2, 2}, {0, 1 / kSqrt2, 1 / kSqrt2, 0});
  const Ket xi({2, 2}, (phi.data() + vphi.data()) / kSqrt2);
  const Op r = partial_trace(xi.projector(), {1});
  EXPECT_LT(max_abs(r.data() - CMatrix::Constant(2, 2, 0.5)), 1e-15);
}

TEST(PartialTrace, KeepingEverythingIsIdentity) {
  std::mt19937_64 rng(1);
  const Op a({2, 3}, testing::random_complex(rng, 6, 6));
  EXPECT_EQ(partial_trace(a, {0, 1}).data(), a.data());
}

TEST(PartialTrace, KeepsOriginalRelativeOrder) {
  std::mt19937_64 rng(2);
  const Op a({2}, testing::random_density(rng, 2));
  const Op b({3}, testing::random_density(rng, 3));
  const Op c({2}, testing::random_density(rng, 2));
  const Op abc = kron(std::vector<Op>{a, b, c});
  EXPECT_LT(max_abs(partial_trace(abc, {0, 2}).data() - kron(a, c).data()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(abc, {2, 0}).data() - kron(a, c).data()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(abc, {1}).data() - b.data()), 1e-14);
}

TEST(PartialTrace, RejectsOutOfRangeIndex) {
  EXPECT_THROW(partial_trace(Op::identity({2, 2}), {2}), DimensionError);
  EXPECT_THROW(partial_trace(Op::identity({2, 2}), {-1}), DimensionError);
}

TEST(PartialTrace, ComposesAndPreservesTrace) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Op a({2, 3, 2}, testing::random_complex(rng, 12, 12));
    const Op once = partial_trace(a, {0});
    const Op twice = partial_trace(partial_trace(a, {0, 2}), {0});
    EXPECT_LT(max_abs(once.data() - twice.data()), 1e-12);
    EXPECT_LT(std::abs(partial_trace(a, {1}).trace() - a.trace()), 1e-12);
    EXPECT_LT(std::abs(partial_trace(a, {}).trace() - a.trace()), 1e-12);
  }
}

TEST(PermuteSubsystems, SwapsFactors) {
  std::mt19937_64 rng(4);
  const Op a({2}, testing::random_density(rng, 2));
  const Op b({3}, testing::random_density(rng, 3));
  const std::vector<int> perm = {1, 0};
  const Op swapped = permute_subsystems(kron(a, b), perm);
  EXPECT_EQ(swapped.dims(), (Dims{3, 2}));
  EXPECT_LT(max_abs(swapped.data() - kron(b, a).data()), 1e-15);
  const std::vector<int> bad = {0, 0};
  EXPECT_THROW(permute_subsystems(kron(a, b), bad), DimensionError);
}

TEST(Positivity, Identity) {
  EXPECT_TRUE(is_hermitian(Op::identity({4}), 1e-9));
  EXPECT_TRUE(is_psd(Op::identity({4}), 1e-9));
}

TEST(Positivity, PauliXIsNotPsd) {
  EXPECT_TRUE(is_hermitian(kSigmaX, 1e-9));
  EXPECT_FALSE(is_psd(kSigmaX, 1e-9));
  EXPECT_NEAR(min_eigenvalue(kSigmaX), -1.0, 1e-12);
}

TEST(Positivity, EigenvaluesThreeAndMinusOne) {
  const Op m = make_op({2}, {{1, 2}, {2, 1}});
  EXPECT_TRUE(is_hermitian(m, 1e-9));
  EXPECT_FALSE(is_psd(m, 1e-9));
  EXPECT_NEAR(min_eigenvalue(m), -1.0, 1e-12);
}

TEST(Positivity, NonHermitianIsNotPsd) {
  const Op m = make_op({2}, {{1, 1}, {0, 1}});
  EXPECT_FALSE(is_hermitian(m, 1e-9));
  EXPECT_FALSE(is_psd(m, 1e-9));
}

TEST(Positivity, SmallNegativeWithinTolerance) {
  const Op m = make_op({2}, {{1, 0}, {0, -1e-12}});
  EXPECT_TRUE(is_psd(m, 1e-9));
  EXPECT_FALSE(is_psd(m, 1e-13));
}

TEST(Rank, Examples) {
  const Ket phi = make_ket({2, 2}, {1 / kSqrt2, 0, 0, 1 / kSqrt2});
  EXPECT_EQ(rank(phi.projector(), 1e-8), 1);
  EXPECT_EQ(rank(Op::zero({2, 2}), 1e-8), 0);
  EXPECT_EQ(rank(Op::identity({4}), 1e-8), 4);
}

TEST(Rank, InvariantUnderUnitaryConjugation) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = pick(rng);
    const CMatrix g = testing::random_complex(rng, 5, r);
    const CMatrix a = r == 0 ? CMatrix::Zero(5, 5) : CMatrix(g * g.adjoint());
    const CMatrix u = testing::random_unitary(rng, 5);
    EXPECT_EQ(rank(a, 1e-8), r);
    EXPECT_EQ(rank(CMatrix(u * a * u.adjoint()), 1e-8), r);
  }
}

TEST(ProportionalRankOne, Examples) {
  const Ket phi = make_ket({2, 2}, {1 / kSqrt2, 0, 0, 1 / kSqrt2});
  const Ket vphi = make_ket({2, 2}, {0, 1 / kSqrt2, 1 / kSqrt2, 0});
  const Ket xi = make_ket({2, 2}, {0.5, 0.5, 0.5, 0.5});
  const Ket theta = make_ket({2, 2}, {0.5, -0.5, -0.5, 0.5});
  EXPECT_FALSE(proportional_rank_one(xi.projector(), theta.projector()));
  EXPECT_TRUE(proportional_rank_one(phi.projector(), Complex(2.0) * phi.projector()));
  EXPECT_FALSE(proportional_rank_one(phi.projector(), vphi.projector()));
  EXPECT_TRUE(proportional_rank_one(Op::zero({2, 2}), Op::zero({2, 2})));
  EXPECT_FALSE(proportional_rank_one(Op::zero({2, 2}), phi.projector()));
}

TEST(ProportionalRankOne, PhaseInvariant) {
  const Ket a = make_ket({2}, {0.6, 0.8});
  const Ket b = make_ket({2}, {Complex(0, 0.6), Complex(0, 0.8)});
  EXPECT_TRUE(proportional_rank_one(a.projector(), b.projector()));
}

TEST(ProportionalRankOne, RejectsHigherRank) {
  EXPECT_THROW(proportional_rank_one(Op::identity({2}), kZeroProj), InputError);
}

TEST(RealVectorize, Examples) {
  EXPECT_EQ(real_vectorize(Op::zero({2})), RVector::Zero(8));
  RVector expected(8);
  expected << 1, 0, 0, 1, 0, 0, 0, 0;
  EXPECT_EQ(real_vectorize(Op::identity({2})), expected);
  const Op y = make_op({2}, {{0, Complex(0, -1)}, {Complex(0, 1), 0}});
  RVector expected_y(8);
  expected_y << 0, 0, 0, 0, 0, -1, 1, 0;
  EXPECT_EQ(real_vectorize(y), expected_y);
}

TEST(RealVectorize, Linear) {
  std::mt19937_64 rng(6);
  const CMatrix a = testing::random_hermitian(rng, 3);
  const CMatrix b = testing::random_hermitian(rng, 3);
  const RVector lhs = real_vectorize(CMatrix(2.5 * a - 0.5 * b));
  const RVector rhs = 2.5 * real_vectorize(a) - 0.5 * real_vectorize(b);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Nullspace, RankOneTwoByTwo) {
  RMatrix m(2, 2);
  m << 1, 1, 1, 1;
  const RMatrix n = nullspace(m, 1e-8);
  ASSERT_EQ(n.cols(), 1);
  EXPECT_NEAR(std::abs(n(0, 0)), 1 / kSqrt2, 1e-12);
  EXPECT_NEAR(n(0, 0), -n(1, 0), 1e-12);
}

TEST(Nullspace, IdentityHasNone) { EXPECT_EQ(nullspace(RMatrix::Identity(3, 3), 1e-8).cols(), 0); }

TEST(Nullspace, CoefficientSystemIsOneDimensional) {
  RMatrix m(3, 4);
  m << 9.0 / 5.0, 6.0 / 5.0, -1.5, -1.5,
       4, -4, -5, 5,
       1, 1, -1, -1;
  const RMatrix n = nullspace(m, 1e-8);
  ASSERT_EQ(n.cols(), 1);
  const RVector v = n.col(0) / n(0, 0);
  EXPECT_LT((v - RVector::Ones(4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Nullspace, OrthonormalAndAnnihilated) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const RMatrix m = RMatrix::NullaryExpr(4, 3, [&] { return g(rng); }) *
                      RMatrix::NullaryExpr(3, 7, [&] { return g(rng); });
    const RMatrix n = nullspace(m, 1e-10);
    ASSERT_EQ(n.cols(), 4);
    EXPECT_LT((n.transpose() * n - RMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((m * n).cwiseAbs().maxCoeff(), 1e-9 * m.norm());
  }
}

TEST(Nnls, ClampsNegativeComponent) {
  RVector b(2);
  b << 1, -1;
  const NnlsResult r = nnls(RMatrix::Identity(2, 2), b);
  EXPECT_EQ(r.status, NnlsStatus::kConverged);
  EXPECT_NEAR(r.x(0), 1.0, 1e-14);
  EXPECT_NEAR(r.x(1), 0.0, 1e-14);
  EXPECT_NEAR(r.residual, 1.0, 1e-14);
}

TEST(Nnls, ConsistentSystemsHaveZeroResidual) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const RMatrix m = RMatrix::NullaryExpr(6, 9, [&] { return g(rng); });
    RVector x0 = RVector::NullaryExpr(9, [&] { return std::abs(g(rng)); });
    x0(trial % 9) = 0.0;
    const NnlsResult r = nnls(m, m * x0);
    EXPECT_EQ(r.status, NnlsStatus::kConverged);
    EXPECT_LT(r.residual, 1e-9);
    EXPECT_GE(r.x.minCoeff(), 0.0);
  }
}

TEST(Nnls, SatisfiesOptimalityConditions) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const RMatrix m = RMatrix::NullaryExpr(8, 5, [&] { return g(rng); });
    const RVector b = RVector::NullaryExpr(8, [&] { return g(rng); });
    const NnlsResult r = nnls(m, b);
    ASSERT_EQ(r.status, NnlsStatus::kConverged);
    const RVector grad = m.transpose() * (m * r.x - b);
    for (int i = 0; i < 5; ++i) {
      EXPECT_GE(r.x(i), 0.0);
      if (r.x(i) > 1e-12) {
        EXPECT_NEAR(grad(i), 0.0, 1e-8);
      } else {
        EXPECT_GE(grad(i), -1e-8);
      }
    }
    EXPECT_NEAR(r.residual, (m * r.x - b).norm(), 1e-12);
  }
}

TEST(Nnls, RhsLengthMismatch) {
  EXPECT_THROW(nnls(RMatrix::Identity(2, 2), RVector::Ones(3)), DimensionError);
}

TEST(Tolerances, MustBePositive) {
  Tolerances t;
  EXPECT_NO_THROW(t.validate());
  t.abs_tol = 0.0;
  EXPECT_THROW(t.validate(), InputError);
}

TEST(Op, RejectsNonFiniteAndBadShape) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Op({2}, m), InputError);
  EXPECT_THROW(Op({3}, CMatrix::Identity(2, 2)), DimensionError);
}

}  // namespace
}  // namespace chanasm
