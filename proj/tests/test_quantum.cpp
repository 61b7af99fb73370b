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

#include "chanasm/quantum.hpp"
#include "test_support.hpp"

namespace chanasm {
namespace {

using testing::kSqrt2;
using testing::make_ket;

CMatrix cnot() {
  CMatrix u = CMatrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

CMatrix pauli(int k) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

TEST(State, ValidatesDensityMatrix) {
  EXPECT_THROW(State(Op::identity({2})), InputError);
  EXPECT_THROW(State(Op({2}, pauli(3))), InputError);
  EXPECT_NO_THROW(State(Op({2}, 0.5 * pauli(0))));
}

TEST(Povm, ProjectiveBasesSumToIdentity) {
  const Ket plus = make_ket({2}, {1 / kSqrt2, 1 / kSqrt2});
  const Ket minus = make_ket({2}, {1 / kSqrt2, -1 / kSqrt2});
  const Povm p = Povm::projective({{plus, minus}});
  EXPECT_EQ(p.settings(), 1);
  EXPECT_EQ(p.outcomes(), 2);
  EXPECT_LT(max_abs(p.effect(0, 0).data() + p.effect(0, 1).data() - CMatrix::Identity(2, 2)), 1e-15);
}

TEST(Povm, RejectsIncompleteOrNegativeEffects) {
  const Op half({2}, 0.5 * pauli(0));
  EXPECT_THROW(Povm({{half}}), InputError);
  const Op a({2}, 0.5 * (pauli(0) + 2.0 * pauli(3)));
  const Op b({2}, 0.5 * (pauli(0) - 2.0 * pauli(3)));
  EXPECT_THROW(Povm({{a, b}}), InputError);
  EXPECT_THROW(Povm({}), InputError);
}

TEST(MaximallyEntangled, Examples) {
  const Ket k = maximally_entangled(2);
  EXPECT_LT((k.data() - make_ket({2, 2}, {1 / kSqrt2, 0, 0, 1 / kSqrt2}).data()).norm(), 1e-15);
  for (int d = 2; d <= 5; ++d) {
    const Ket m = maximally_entangled(d);
    EXPECT_NEAR(m.norm(), 1.0, 1e-14);
    const CMatrix id = CMatrix::Identity(d, d) / static_cast<double>(d);
    EXPECT_LT(max_abs(partial_trace(m.projector(), {0}).data() - id), 1e-14);
    EXPECT_LT(max_abs(partial_trace(m.projector(), {1}).data() - id), 1e-14);
  }
  EXPECT_THROW(maximally_entangled(0), DimensionError);
}

TEST(ChoiOfKraus, IdentityChannel) {
  const ChoiOp c = choi_of_kraus(unitary_channel(CMatrix::Identity(2, 2), {2}));
  EXPECT_LT(max_abs(c.op().data() - maximally_entangled(2).projector().data()), 1e-15);
}

TEST(ChoiOfKraus, FullyDepolarizing) {
  KrausChannel k{{2}, {2}, {}};
  for (int i = 0; i < 4; ++i) k.kraus.push_back(0.5 * pauli(i));
  const ChoiOp c = choi_of_kraus(k);
  EXPECT_LT(max_abs(c.op().data() - CMatrix::Identity(4, 4) / 4.0), 1e-15);
}

TEST(ChoiOfKraus, UnitaryGivesRankOne) {
  std::mt19937_64 rng(11);
  const CMatrix u = testing::random_unitary(rng, 3);
  const ChoiOp c = choi_of_kraus(unitary_channel(u, {3}));
  EXPECT_EQ(rank(c.op(), 1e-8), 1);
  CMatrix lift = CMatrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) lift.block(3 * i, 3 * j, 3, 3) = u(i, j) * CMatrix::Identity(3, 3);
  }
  const CVector v = lift * maximally_entangled(3).data();
  EXPECT_LT(max_abs(c.op().data() - v * v.adjoint()), 1e-14);
}

TEST(ChoiOfKraus, RejectsBadShapesAndNonTracePreserving) {
  KrausChannel k{{2}, {2}, {CMatrix::Identity(3, 2)}};
  EXPECT_THROW(choi_of_kraus(k), DimensionError);
  KrausChannel sub{{2}, {2}, {0.5 * CMatrix::Identity(2, 2)}};
  EXPECT_THROW(choi_of_kraus(sub), InputError);
}

TEST(ApplyChoi, IdentityChannelRoundTrip) {
  std::mt19937_64 rng(12);
  const ChoiOp id = choi_of_kraus(unitary_channel(CMatrix::Identity(3, 3), {3}));
  const CMatrix rho = testing::random_density(rng, 3);
  EXPECT_LT(max_abs(apply_choi(id, Op({3}, rho)).data() - rho), 1e-14);
}

TEST(ApplyChoi, MatchesKrausAction) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const KrausChannel k = testing::random_channel(rng, 2 + trial % 2, 3 - trial % 2, 2);
    const CMatrix x = testing::random_complex(rng, k.in_dim(), k.in_dim());
    CMatrix expected = CMatrix::Zero(k.out_dim(), k.out_dim());
    for (const CMatrix& kop : k.kraus) expected += kop * x * kop.adjoint();
    EXPECT_LT(max_abs(apply_choi(choi_of_kraus(k), Op(k.in_dims, x)).data() - expected), 1e-12);
  }
}

TEST(ApplyChoi, LinearAndTracePreserving) {
  std::mt19937_64 rng(14);
  const ChoiOp c = choi_of_kraus(testing::random_channel(rng, 3, 2, 3));
  const CMatrix x = testing::random_hermitian(rng, 3);
  const CMatrix y = testing::random_hermitian(rng, 3);
  const CMatrix lhs = apply_choi(c, Op({3}, 0.3 * x - 1.7 * y)).data();
  const CMatrix rhs = 0.3 * apply_choi(c, Op({3}, x)).data() - 1.7 * apply_choi(c, Op({3}, y)).data();
  EXPECT_LT(max_abs(lhs - rhs), 1e-12);
  EXPECT_LT(std::abs(apply_choi(c, Op({3}, x)).trace() - x.trace()), 1e-12);
}

TEST(ApplyChoi, DimensionMismatch) {
  const ChoiOp id = choi_of_kraus(unitary_channel(CMatrix::Identity(2, 2), {2}));
  EXPECT_THROW(apply_choi(id, Op::identity({3})), DimensionError);
}

TEST(ChoiOfMap, RoundTripsThroughApply) {
  std::mt19937_64 rng(15);
  const ChoiOp c = choi_of_kraus(testing::random_channel(rng, 2, 3, 2));
  const ChoiOp back = choi_of_map({2}, {3}, [&](const Op& x) { return apply_choi(c, x); });
  EXPECT_LT(max_abs(back.op().data() - c.op().data()), 1e-14);
}

TEST(VerifyCptp, Examples) {
  const Op phi = maximally_entangled(2).projector();
  const CptpReport id = verify_cptp(ChoiOp({2}, {2}, phi), 1e-9);
  EXPECT_TRUE(id.cp);
  EXPECT_TRUE(id.tp);
  const CptpReport half = verify_cptp(ChoiOp({2}, {2}, 0.5 * phi.data()), 1e-9);
  EXPECT_TRUE(half.cp);
  EXPECT_FALSE(half.tp);
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 0.5;
  const CptpReport transpose = verify_cptp(ChoiOp({2}, {2}, swap), 1e-9);
  EXPECT_FALSE(transpose.cp);
  EXPECT_TRUE(transpose.tp);
  EXPECT_NEAR(transpose.min_eigenvalue, -0.5, 1e-12);
}

TEST(ExtendChannel, ReproducesOriginalAction) {
  std::mt19937_64 rng(16);
  const KrausChannel k = testing::random_channel(rng, 2, 6, 2);
  KrausChannel shaped{{2}, {3, 2}, k.kraus};
  const ChoiOp e = choi_of_kraus(shaped);
  const ExtendedChannel ext = extend_channel(e);
  EXPECT_EQ(ext.channel.in_dims(), (Dims{2, 2}));
  EXPECT_EQ(ext.channel.out_dims(), (Dims{3, 2}));
  const CptpReport r = verify_cptp(ext.channel, 1e-9);
  EXPECT_TRUE(r.cp && r.tp);
  for (int trial = 0; trial < 50; ++trial) {
    const Op rho({2}, testing::random_density(rng, 2));
    const Op joint = kron(rho, ext.ancilla.op());
    EXPECT_LT(max_abs(apply_choi(ext.channel, joint).data() - apply_choi(e, rho).data()), 1e-9);
  }
}

TEST(ExtendChannel, RejectsNonChannels) {
  const ChoiOp sub({2, 2}, {2}, Op::identity({2, 2, 2}).data() / 16.0);
  EXPECT_THROW(extend_channel(sub), InputError);
  const ChoiOp flat({2}, {2}, maximally_entangled(2).projector());
  EXPECT_THROW(extend_channel(flat), DimensionError);
}

TEST(ApplyOnSubsystems, IdentityLeavesInputUnchanged) {
  std::mt19937_64 rng(17);
  const Op rho({2, 3, 2}, testing::random_density(rng, 12));
  const ChoiOp id = choi_of_kraus(unitary_channel(CMatrix::Identity(3, 3), {3}));
  EXPECT_LT(max_abs(apply_channel_on_subsystems(id, rho, {1}).data() - rho.data()), 1e-14);
}

TEST(ApplyOnSubsystems, ProductInput) {
  std::mt19937_64 rng(18);
  const Op r1({2}, testing::random_density(rng, 2));
  const Op r2({3}, testing::random_density(rng, 3));
  const KrausChannel k = testing::random_channel(rng, 2, 2, 2);
  const ChoiOp c = choi_of_kraus(k);
  const Op out = apply_channel_on_subsystems(c, kron(r1, r2), {0});
  EXPECT_LT(max_abs(out.data() - kron(apply_choi(c, r1), r2).data()), 1e-13);
  const Op out2 = apply_channel_on_subsystems(c, kron(r2, r1), {1});
  EXPECT_LT(max_abs(out2.data() - kron(r2, apply_choi(c, r1)).data()), 1e-13);
}

TEST(ApplyOnSubsystems, ControlledNotBuildsFourQubitState) {
  const Op phi = maximally_entangled(2).projector();
  const Op rho = kron(phi, phi);
  const ChoiOp c = choi_of_kraus(unitary_channel(cnot(), {2, 2}));
  const Op out = apply_channel_on_subsystems(c, rho, {1, 2});
  const auto b = [](std::initializer_list<int> d) { return Ket::basis({2, 2, 2, 2}, std::vector<int>(d)); };
  const CVector psi = 0.5 * (b({0, 0, 0, 0}).data() + b({0, 0, 1, 1}).data() +
                             b({1, 1, 1, 0}).data() + b({1, 1, 0, 1}).data());
  EXPECT_LT(max_abs(out.data() - psi * psi.adjoint()), 1e-14);
}

TEST(ApplyOnSubsystems, DimensionMismatch) {
  const ChoiOp id = choi_of_kraus(unitary_channel(CMatrix::Identity(2, 2), {2}));
  EXPECT_THROW(apply_channel_on_subsystems(id, Op::identity({3, 3}), {0}), DimensionError);
  EXPECT_THROW(apply_channel_on_subsystems(id, Op::identity({2, 2}), {2}), DimensionError);
}

}  // namespace
}  // namespace chanasm
