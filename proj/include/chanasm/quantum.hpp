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

#include <functional>
#include <vector>

#include "chanasm/opcore.hpp"

namespace chanasm {

/// Density operator: Hermitian, PSD, unit trace.
class State {
 public:
  explicit State(Op op, double tol = Tolerances{}.abs_tol);
  const Op& op() const { return op_; }
  const Dims& dims() const { return op_.dims(); }

 private:
  Op op_;
};

/// Measurement family with a fixed number of outcomes per setting.
/// effects[s][o] is the effect for outcome o of setting s.
class Povm {
 public:
  Povm(std::vector<std::vector<Op>> effects, double tol = Tolerances{}.abs_tol);

  /// Rank-one projective measurement; kets[s] is an orthonormal basis.
  static Povm projective(const std::vector<std::vector<Ket>>& kets,
                         double tol = Tolerances{}.abs_tol);

  int settings() const { return static_cast<int>(effects_.size()); }
  int outcomes() const { return static_cast<int>(effects_.front().size()); }
  int dim() const { return effects_.front().front().side(); }
  const Op& effect(int setting, int outcome) const { return effects_.at(setting).at(outcome); }
  const std::vector<std::vector<Op>>& effects() const { return effects_; }

 private:
  std::vector<std::vector<Op>> effects_;
};

/// Kraus form; accepted as an input format only. Each operator is
/// out_dim x in_dim.
struct KrausChannel {
  Dims in_dims;
  Dims out_dims;
  std::vector<CMatrix> kraus;

  int in_dim() const { return dim_product(in_dims); }
  int out_dim() const { return dim_product(out_dims); }
  /// Throws DimensionError on shape mismatch, InputError when sum K^dag K != I.
  void validate(double tol = Tolerances{}.abs_tol) const;
};

KrausChannel unitary_channel(const CMatrix& u, Dims dims);

/// Choi matrix J = (L (x) id)(|phi+><phi+|) with the normalized maximally
/// entangled state; subsystems are ordered output factors first, then input.
class ChoiOp {
 public:
  ChoiOp(Dims out_dims, Dims in_dims, CMatrix data, double tol = Tolerances{}.abs_tol);
  ChoiOp(Dims out_dims, Dims in_dims, const Op& op, double tol = Tolerances{}.abs_tol);

  const Dims& out_dims() const { return out_dims_; }
  const Dims& in_dims() const { return in_dims_; }
  int out_dim() const { return dim_product(out_dims_); }
  int in_dim() const { return dim_product(in_dims_); }
  const Op& op() const { return op_; }
  /// Same Choi matrix with input and output each flattened to one factor.
  Op flat() const;

 private:
  Dims out_dims_;
  Dims in_dims_;
  Op op_;
};

Ket maximally_entangled(int d);

ChoiOp choi_of_kraus(const KrausChannel& k);

/// Choi matrix of an arbitrary linear map, probed on matrix units.
ChoiOp choi_of_map(Dims in_dims, Dims out_dims, const std::function<Op(const Op&)>& map);

/// L(X) = d_in * Tr_in[(1 (x) X^T) J].
Op apply_choi(const ChoiOp& c, const Op& x);

struct CptpReport {
  bool cp = false;
  bool tp = false;
  double min_eigenvalue = 0.0;
  /// max |Tr_out J - I/d_in|.
  double tp_deviation = 0.0;
};

CptpReport verify_cptp(const ChoiOp& c, double tol);

struct ExtendedChannel {
  State ancilla;
  ChoiOp channel;
};

/// For e: A -> A'(x)B (out_dims = [d_A', d_B]) returns |0><0| on B together
/// with e o Tr_B : A(x)B -> A'(x)B, so that the extension applied to
/// rho (x) |0><0| reproduces e(rho).
ExtendedChannel extend_channel(const ChoiOp& e, double tol = Tolerances{}.abs_tol);

/// Applies c on the listed subsystems (in the listed order) and the identity
/// elsewhere. c.in_dims and c.out_dims must each split into one factor per
/// target; output factors replace the targets in place.
Op apply_channel_on_subsystems(const ChoiOp& c, const Op& rho, const std::vector<int>& targets);

}  // namespace chanasm
