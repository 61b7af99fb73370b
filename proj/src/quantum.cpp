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

#include "chanasm/quantum.hpp"

#include <cmath>
#include <numeric>

namespace chanasm {

namespace {

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

State::State(Op op, double tol) : op_(std::move(op)) {
  if (!is_psd(op_, tol)) throw InputError("state is not Hermitian positive semidefinite");
  if (std::abs(op_.trace() - Complex(1.0)) > tol) throw InputError("state trace is not 1");
}

Povm::Povm(std::vector<std::vector<Op>> effects, double tol) : effects_(std::move(effects)) {
  if (effects_.empty() || effects_.front().empty()) {
    throw InputError("POVM needs at least one setting and one outcome");
  }
  const std::size_t outcomes = effects_.front().size();
  const Dims& dims = effects_.front().front().dims();
  for (std::size_t s = 0; s < effects_.size(); ++s) {
    if (effects_[s].size() != outcomes) {
      throw DimensionError("POVM settings must share the outcome count");
    }
    Op total = Op::zero(dims);
    for (const Op& e : effects_[s]) {
      if (e.dims() != dims) throw DimensionError("POVM effects disagree on dimension");
      if (!is_psd(e, tol)) {
        throw InputError("POVM effect for setting " + std::to_string(s) + " is not PSD");
      }
      total += e;
    }
    if (max_abs(total.data() - CMatrix::Identity(total.side(), total.side())) > tol) {
      throw InputError("POVM effects of setting " + std::to_string(s) +
                       " do not sum to identity");
    }
  }
}

Povm Povm::projective(const std::vector<std::vector<Ket>>& kets, double tol) {
  std::vector<std::vector<Op>> effects;
  for (const auto& basis : kets) {
    auto& row = effects.emplace_back();
    for (const Ket& k : basis) row.push_back(k.projector());
  }
  return Povm(std::move(effects), tol);
}

void KrausChannel::validate(double tol) const {
  if (kraus.empty()) throw InputError("channel needs at least one Kraus operator");
  const int din = in_dim();
  const int dout = out_dim();
  CMatrix sum = CMatrix::Zero(din, din);
  for (const CMatrix& k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw DimensionError("Kraus operator shape " + std::to_string(k.rows()) + "x" +
                           std::to_string(k.cols()) + " does not match " +
                           std::to_string(dout) + "x" + std::to_string(din));
    }
    if (!k.allFinite()) throw InputError("Kraus operator has non-finite entries");
    sum += k.adjoint() * k;
  }
  if (max_abs(sum - CMatrix::Identity(din, din)) > tol) {
    throw InputError("Kraus operators are not trace preserving");
  }
}

KrausChannel unitary_channel(const CMatrix& u, Dims dims) {
  return KrausChannel{dims, dims, {u}};
}

ChoiOp::ChoiOp(Dims out_dims, Dims in_dims, CMatrix data, double tol)
    : out_dims_(std::move(out_dims)),
      in_dims_(std::move(in_dims)),
      op_(concat(out_dims_, in_dims_), std::move(data)) {
  if (!is_hermitian(op_, tol)) throw InputError("Choi matrix is not Hermitian");
}

ChoiOp::ChoiOp(Dims out_dims, Dims in_dims, const Op& op, double tol)
    : ChoiOp(std::move(out_dims), std::move(in_dims), op.data(), tol) {}

Op ChoiOp::flat() const { return Op({out_dim(), in_dim()}, op_.data()); }

Ket maximally_entangled(int d) {
  if (d < 1) throw DimensionError("maximally_entangled: d must be >= 1");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return Ket({d, d}, std::move(v));
}

ChoiOp choi_of_kraus(const KrausChannel& k) {
  k.validate();
  const int din = k.in_dim();
  const CVector phi = maximally_entangled(din).data();
  const CMatrix id = CMatrix::Identity(din, din);
  const int dout = k.out_dim();
  CMatrix j = CMatrix::Zero(dout * din, dout * din);
  for (const CMatrix& kop : k.kraus) {
    // (K (x) 1)|phi+>
    CVector v = CVector::Zero(dout * din);
    for (int o = 0; o < dout; ++o) {
      for (int i = 0; i < din; ++i) {
        Complex acc = 0.0;
        for (int a = 0; a < din; ++a) acc += kop(o, a) * phi(a * din + i);
        v(o * din + i) = acc;
      }
    }
    j += v * v.adjoint();
  }
  return ChoiOp(k.out_dims, k.in_dims, std::move(j));
}

ChoiOp choi_of_map(Dims in_dims, Dims out_dims, const std::function<Op(const Op&)>& map) {
  const int din = dim_product(in_dims);
  const int dout = dim_product(out_dims);
  CMatrix j = CMatrix::Zero(dout * din, dout * din);
  for (int a = 0; a < din; ++a) {
    for (int b = 0; b < din; ++b) {
      CMatrix unit = CMatrix::Zero(din, din);
      unit(a, b) = 1.0;
      const Op image = map(Op(in_dims, unit));
      if (image.side() != dout) throw DimensionError("choi_of_map: image has wrong size");
      for (int o = 0; o < dout; ++o) {
        for (int p = 0; p < dout; ++p) {
          j(o * din + a, p * din + b) = image.data()(o, p) / static_cast<double>(din);
        }
      }
    }
  }
  return ChoiOp(std::move(out_dims), std::move(in_dims), std::move(j));
}

Op apply_choi(const ChoiOp& c, const Op& x) {
  const int din = c.in_dim();
  if (x.side() != din) {
    throw DimensionError("apply_choi: input side " + std::to_string(x.side()) +
                         " does not match channel input " + std::to_string(din));
  }
  const Op lifted = kron(Op::identity({c.out_dim()}), Op({din}, x.data().transpose()));
  const Op product(lifted.dims(), lifted.data() * c.flat().data());
  Op out = partial_trace(product, {0});
  out *= static_cast<double>(din);
  return Op(c.out_dims(), out.data());
}

CptpReport verify_cptp(const ChoiOp& c, double tol) {
  CptpReport report;
  report.min_eigenvalue = min_eigenvalue(c.op());
  report.cp = is_psd(c.op(), tol);
  const Op reduced = partial_trace(c.flat(), {1});
  const int din = c.in_dim();
  report.tp_deviation =
      max_abs(reduced.data() - CMatrix::Identity(din, din) / static_cast<double>(din));
  report.tp = report.tp_deviation < tol;
  return report;
}

ExtendedChannel extend_channel(const ChoiOp& e, double tol) {
  if (e.out_dims().size() != 2) {
    throw DimensionError("extend_channel: output must factor as [d_out, d_ancilla]");
  }
  const CptpReport cptp = verify_cptp(e, tol);
  if (!cptp.cp || !cptp.tp) throw InputError("extend_channel: input channel is not CPTP");
  const int d_anc = e.out_dims()[1];
  Dims in_dims = e.in_dims();
  in_dims.push_back(d_anc);
  const int n_in = static_cast<int>(e.in_dims().size());
  std::vector<int> keep(n_in);
  std::iota(keep.begin(), keep.end(), 0);

  ChoiOp extended = choi_of_map(in_dims, e.out_dims(), [&](const Op& x) {
    return apply_choi(e, partial_trace(x, keep));
  });
  State ancilla(Ket::basis({d_anc}, std::vector<int>{0}).projector());
  return ExtendedChannel{std::move(ancilla), std::move(extended)};
}

Op apply_channel_on_subsystems(const ChoiOp& c, const Op& rho, const std::vector<int>& targets) {
  const Dims& dims = rho.dims();
  const int k = static_cast<int>(dims.size());
  std::vector<bool> used(k, false);
  Dims target_dims;
  for (int t : targets) {
    if (t < 0 || t >= k || used[t]) throw DimensionError("invalid target subsystem list");
    used[t] = true;
    target_dims.push_back(dims[t]);
  }
  if (dim_product(target_dims) != c.in_dim()) {
    throw DimensionError("target subsystems do not match channel input dimension");
  }
  if (c.in_dims().size() == targets.size() && c.in_dims() != target_dims) {
    throw DimensionError("target subsystem dims do not match channel input factors");
  }
  Dims out_factors;
  if (c.out_dims().size() == targets.size()) {
    out_factors = c.out_dims();
  } else if (c.out_dim() == c.in_dim()) {
    out_factors = target_dims;
  } else {
    throw DimensionError("channel output does not split into one factor per target");
  }

  // Bring targets to the front in the listed order.
  std::vector<int> perm(targets.begin(), targets.end());
  for (int q = 0; q < k; ++q) {
    if (!used[q]) perm.push_back(q);
  }
  const Op x = permute_subsystems(rho, perm);
  const int din = c.in_dim();
  const int dout = c.out_dim();
  const int drest = x.side() / din;
  const CMatrix& j = c.op().data();

  CMatrix y = CMatrix::Zero(dout * drest, dout * drest);
  for (int i = 0; i < din; ++i) {
    for (int jj = 0; jj < din; ++jj) {
      const auto block = x.data().block(i * drest, jj * drest, drest, drest);
      if (block.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int o = 0; o < dout; ++o) {
        for (int p = 0; p < dout; ++p) {
          const Complex coeff = static_cast<double>(din) * j(o * din + i, p * din + jj);
          if (coeff == Complex(0.0)) continue;
          y.block(o * drest, p * drest, drest, drest) += coeff * block;
        }
      }
    }
  }

  Dims y_dims = out_factors;
  for (int q = 0; q < k; ++q) {
    if (!used[q]) y_dims.push_back(dims[q]);
  }
  std::vector<int> inverse(k);
  for (int q = 0; q < k; ++q) inverse[perm[q]] = q;
  return permute_subsystems(Op(std::move(y_dims), std::move(y)), inverse);
}

}  // namespace chanasm
