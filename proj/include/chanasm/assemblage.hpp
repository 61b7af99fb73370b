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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chanasm/opcore.hpp"
#include "chanasm/quantum.hpp"

namespace chanasm {

/// Outcome vector `a` and setting vector `x`, one entry per untrusted party.
struct Position {
  std::vector<int> a;
  std::vector<int> x;

  friend bool operator==(const Position&, const Position&) = default;
  std::string str() const;
};

/// Parties, settings and outcomes per party, trusted input dimension d_c and
/// trusted output dimension d_ct (equal to d_c for state assemblages).
struct Scenario {
  int parties = 0;
  std::vector<int> settings;
  std::vector<int> outcomes;
  int d_c = 1;
  int d_ct = 1;

  void validate() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;

  int setting_tuples() const;
  int outcome_tuples() const;
  int positions() const { return setting_tuples() * outcome_tuples(); }

  /// Flat index = setting_tuple_index * outcome_tuples() + outcome_tuple_index,
  /// with both tuples read big-endian (first party most significant).
  int index(const Position& p) const;
  Position position(int index) const;
  std::vector<int> settings_at(int tuple_index) const;
  std::vector<int> outcomes_at(int tuple_index) const;
  int setting_index(const std::vector<int>& x) const;
  int outcome_index(const std::vector<int>& a) const;
};

/// Family of trusted-system operators indexed by Position. Construction only
/// checks shapes; the physical constraints are checked by verify_ns and by
/// the operations that require them.
class Assemblage {
 public:
  Assemblage(Scenario scenario, Dims member_dims, std::vector<Op> members);

  const Scenario& scenario() const { return scenario_; }
  const Dims& member_dims() const { return member_dims_; }
  const std::vector<Op>& members() const { return members_; }
  const Op& member(int index) const { return members_.at(index); }
  const Op& member(const Position& p) const { return members_.at(scenario_.index(p)); }
  Op& member(const Position& p) { return members_.at(scenario_.index(p)); }

  /// Sum over all outcome tuples at the given setting tuple.
  Op total(int setting_tuple) const;

 private:
  Scenario scenario_;
  Dims member_dims_;
  std::vector<Op> members_;
};

struct Violation {
  std::string constraint;
  std::string where;
  double magnitude = 0.0;
};

struct NsReport {
  bool pass = true;
  double max_deviation = 0.0;
  std::vector<Violation> violations;
  /// Largest magnitude seen per constraint family.
  std::map<std::string, double> constraint_max;

  void record(std::string constraint, std::string where, double magnitude, double tol);
};

/// Positivity of members, setting-independence of every proper-subset
/// marginal, setting-independence of the total and unit total trace.
/// Deviations are maximum absolute entries of operator differences.
NsReport verify_ns(const Assemblage& s, double tol);

/// Well-defined marginal over `parties` (sorted, possibly empty or full) at
/// the given outcomes/settings of those parties. Throws InputError when the
/// assemblage is not no-signaling within tol.
Op marginal(const Assemblage& s, const std::vector<int>& parties, const std::vector<int>& a_sub,
            const std::vector<int>& x_sub, double tol);

/// member(a,x) = Tr_{A1..An}[(M_{a1|x1} (x) ... (x) M_{an|xn} (x) 1) rho].
/// The first povms.size() factors of rho are the untrusted parties; the rest
/// form the trusted system (two remaining factors are read as [d_ct, d_c]).
Assemblage assemblage_from_realization(const State& rho, const std::vector<Povm>& povms);

/// Shared projection kernel: also used with non-positive W.
Assemblage assemble_from_operator(const Op& w, const std::vector<Povm>& povms);

/// per party i, outputs[i][x_i] = a_i.
struct DeterministicStrategy {
  std::vector<std::vector<int>> outputs;
};

struct LhsModel {
  std::vector<double> weights;
  std::vector<Op> states;
  /// tables[j][i][x][a] = p_j^{(i)}(a|x).
  std::vector<std::vector<std::vector<std::vector<double>>>> tables;

  void validate(const Scenario& scenario, double tol) const;
};

Assemblage lhs_assemblage(const LhsModel& model, const Scenario& scenario, double tol = 1e-9);

struct PureMember {
  double weight = 0.0;
  Ket ket;
};

/// Assemblage whose members are zero or weight * |ket><ket| with unit kets.
struct PureAssemblage {
  Scenario scenario;
  Dims member_dims;
  std::vector<std::optional<PureMember>> members;

  Assemblage to_assemblage() const;
  int nonzero_count() const;
};

/// Members with trace below tol.abs_tol become zero; others must have rank
/// one (InputError naming the position otherwise).
PureAssemblage canonicalize_pure(const Assemblage& s, const Tolerances& tol = {});

struct HermitianRealization {
  Op w;
  std::vector<Povm> povms;
};

bool verify_hermitian_realization(const HermitianRealization& h, const Assemblage& s, double tol);

struct LhsVerdict {
  bool local = false;
  std::optional<LhsModel> model;
  std::string reason;
  double residual = 0.0;
  long long strategies = 0;
  long long consistent_strategies = 0;
  /// Set when the weight solver stopped at its iteration limit.
  bool inconclusive = false;
};

/// Exact LHS decision for pure-member assemblages.
///
/// Any LHS model can be rewritten over global deterministic strategies,
/// sigma(a|x) = sum_j [j selects (a,x)] tau_j with tau_j >= 0. A member that
/// is zero forces every tau_j selecting it to vanish. A member that is rank
/// one forces every tau_j selecting it to be proportional to that member, so
/// a strategy whose selected members are not all proportional to one pure
/// state carries zero weight. What remains is a nonnegative weight system
/// over the consistent strategies, solved by NNLS.
LhsVerdict pure_lhs_decide(const PureAssemblage& p, const Tolerances& tol = {});

}  // namespace chanasm
