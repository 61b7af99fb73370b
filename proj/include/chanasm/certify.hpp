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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chanasm/assemblage.hpp"

namespace chanasm {

enum class ConstraintMode {
  /// Every proper-subset marginal independent of the other settings.
  kFullNs,
  /// Two parties; only the A versus (B, trusted) split is no-signaling.
  kAsymNs,
};

const char* to_string(ConstraintMode mode);
ConstraintMode parse_constraint_mode(const std::string& name);

/// Real linear system over the coefficients c of the non-zero positions of a
/// pure assemblage, member = c * |u><u| with |u> the fixed unit ket.
struct LinearSystem {
  RMatrix a;
  RVector b;
  /// Column -> flat position index.
  std::vector<int> positions;
  /// Weights of the assemblage the system was built from.
  RVector reference;
};

LinearSystem build_constraint_system(const PureAssemblage& p, ConstraintMode mode);

enum class Verdict { kUniqueExtreme, kNonUnique };

const char* to_string(Verdict verdict);

struct ExtremalityCertificate {
  ConstraintMode mode = ConstraintMode::kFullNs;
  Scenario scenario;
  std::vector<int> positions;
  int rank = 0;
  int nullity = 0;
  /// Flat positions whose coefficient is fixed across all solutions.
  std::vector<int> pinned;
  Verdict verdict = Verdict::kUniqueExtreme;
  RVector reference;
  /// Minimum-norm solution of the system; equals the reference when unique.
  RVector recovered;
  /// Orthonormal null directions, one per column.
  RMatrix null_basis;
  /// p + eps*v and p - eps*v for the first null direction v.
  std::optional<std::pair<RVector, RVector>> witness_pair;
  double reference_residual = 0.0;

  bool is_pinned(int flat_position) const;
};

/// Uniqueness of the coefficients over the affine solution set A c = b.
/// Because the reference is strictly positive on every variable, any null
/// direction can be followed a positive distance both ways, so nullity > 0
/// yields an explicit convex split and nullity 0 certifies extremality.
ExtremalityCertificate decomposition_analysis(const PureAssemblage& p, ConstraintMode mode,
                                              const Tolerances& tol = {});

/// Sufficient inflexibility condition for two parties with two dichotomic
/// settings each: returns the first (y1, y2) such that each of
/// {sigma(0 a2|y1 x2)}, {sigma(1 a2|y1 x2)} and {sigma(a1 0|x1 y2)} consists of
/// non-zero, pairwise non-proportional rank-one members.
///
/// "Different" is read as pairwise distinct within each set; members of
/// different sets may coincide.
std::optional<std::pair<int, int>> inflexibility_structural_check(const PureAssemblage& p,
                                                                  const Tolerances& tol = {});

/// Linear functional F(S) = sum Tr(rho(a,x) S(a,x)) where rho is the
/// normalized reference member, or zero where the reference vanishes.
struct Witness {
  Dims member_dims;
  Scenario scenario;
  std::vector<std::optional<Op>> normalized;

  static Witness from_reference(const Assemblage& reference, double tol = Tolerances{}.abs_tol);
};

double witness_eval(const Witness& w, const Assemblage& s);

/// Coefficient vector back to an assemblage with the pure pattern's kets.
Assemblage assemblage_from_coefficients(const PureAssemblage& p, const std::vector<int>& positions,
                                        const RVector& c);

}  // namespace chanasm
