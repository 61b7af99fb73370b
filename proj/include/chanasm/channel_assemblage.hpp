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

#include <vector>

#include "chanasm/assemblage.hpp"
#include "chanasm/quantum.hpp"

namespace chanasm {

/// Completely positive maps C -> C~ indexed by Position, stored as Choi
/// matrices. scenario.d_c is the map input dimension, scenario.d_ct the output.
class ChannelAssemblage {
 public:
  ChannelAssemblage(Scenario scenario, std::vector<ChoiOp> members,
                    double tol = Tolerances{}.abs_tol);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<ChoiOp>& members() const { return members_; }
  const ChoiOp& member(int index) const { return members_.at(index); }
  const ChoiOp& member(const Position& p) const { return members_.at(scenario_.index(p)); }

  /// Choi matrices as a state assemblage on C~ (x) C, without normalization
  /// checks.
  Assemblage choi_family() const;

 private:
  Scenario scenario_;
  std::vector<ChoiOp> members_;
};

/// Choi family of the maps rho_C -> Tr_A[(M (x) 1) e(rho_A (x) rho_C)].
/// e acts on A1..An C -> A1..An C~ (in_dims = [dims of A.., d_c],
/// out_dims = [dims of A.., d_ct]).
ChannelAssemblage chanasm_from_realization(const State& rho_a, const std::vector<Povm>& povms,
                                           const ChoiOp& e, double tol = Tolerances{}.abs_tol);

/// Throws InputError unless every setting total has unit trace.
Assemblage to_choi_assemblage(const ChannelAssemblage& l, double tol = Tolerances{}.abs_tol);

struct NsChannelReport {
  NsReport ns;
  bool total_cp = false;
  bool total_tp = false;
  /// max |Tr_C~(total) - I/d_c| at the first setting tuple.
  double trace_condition_deviation = 0.0;
  double max_deviation = 0.0;
  bool pass = false;
};

NsChannelReport verify_ns_channel(const ChannelAssemblage& l, double tol);

/// tables[j][i][x][a] = p_j^{(i)}(a|x); member(a,x) = sum_j prod_i p * maps[j].
ChannelAssemblage local_channel_assemblage(
    const std::vector<std::vector<std::vector<std::vector<double>>>>& tables,
    const std::vector<ChoiOp>& maps, const Scenario& scenario, double tol = Tolerances{}.abs_tol);

/// Sum over outcomes at the smallest setting tuple; throws InputError when the
/// totals depend on the settings or do not form a channel.
ChoiOp channel_totals(const ChannelAssemblage& l, double tol = Tolerances{}.abs_tol);

/// Two-party relaxed conditions, checked on Choi matrices:
///   "a-sum":   sum_a sigma(ab|xy) independent of x,
///   "b-trace": sum_b Tr_C~ sigma(ab|xy) independent of y,
///   "total":   sum_ab sigma(ab|xy) independent of (x,y),
///   "channel": Tr_C~ of the total equals I/d_c.
NsReport verify_asym_ns(const ChannelAssemblage& l, double tol);

/// Tr_C~ of an operator on C~ (x) C.
Op reduce_output(const Op& choi_member, int d_ct, int d_c);

}  // namespace chanasm
