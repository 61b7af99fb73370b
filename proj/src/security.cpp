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

#include "chanasm/security.hpp"

#include <algorithm>
#include <cmath>

namespace chanasm {

CorrelationTable::CorrelationTable(int mx, int my, int mz, int ka, int kb, int kc)
    : mx_(mx), my_(my), mz_(mz), ka_(ka), kb_(kb), kc_(kc) {
  if (mx < 1 || my < 1 || mz < 1 || ka < 1 || kb < 1 || kc < 1) {
    throw DimensionError("correlation table sizes must be positive");
  }
  p_.assign(static_cast<std::size_t>(mx) * my * mz * ka * kb * kc, 0.0);
}

std::size_t CorrelationTable::offset(int x, int y, int z, int a, int b, int c) const {
  if (x < 0 || x >= mx_ || y < 0 || y >= my_ || z < 0 || z >= mz_ || a < 0 || a >= ka_ ||
      b < 0 || b >= kb_ || c < 0 || c >= kc_) {
    throw DimensionError("correlation table index out of range");
  }
  return ((((static_cast<std::size_t>(x) * my_ + y) * mz_ + z) * ka_ + a) * kb_ + b) * kc_ + c;
}

double& CorrelationTable::at(int x, int y, int z, int a, int b, int c) {
  return p_[offset(x, y, z, a, b, c)];
}

double CorrelationTable::at(int x, int y, int z, int a, int b, int c) const {
  return p_[offset(x, y, z, a, b, c)];
}

double CorrelationTable::normalization_deviation() const {
  double worst = 0.0;
  for (int x = 0; x < mx_; ++x) {
    for (int y = 0; y < my_; ++y) {
      for (int z = 0; z < mz_; ++z) {
        double sum = 0.0;
        for (int a = 0; a < ka_; ++a) {
          for (int b = 0; b < kb_; ++b) {
            for (int c = 0; c < kc_; ++c) sum += at(x, y, z, a, b, c);
          }
        }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }
  return worst;
}

CorrelationTable correlations(const ChannelAssemblage& l, const State& rho, const Povm& charlie) {
  const Scenario& sc = l.scenario();
  if (sc.parties != 2) throw InputError("correlations need exactly two untrusted parties");
  if (rho.op().side() != sc.d_c) throw DimensionError("input state does not match d_c");
  if (charlie.dim() != sc.d_ct) throw DimensionError("trusted measurement does not match d_ct");
  CorrelationTable t(sc.settings[0], sc.settings[1], charlie.settings(), sc.outcomes[0],
                     sc.outcomes[1], charlie.outcomes());
  for (int x = 0; x < sc.settings[0]; ++x) {
    for (int y = 0; y < sc.settings[1]; ++y) {
      for (int a = 0; a < sc.outcomes[0]; ++a) {
        for (int b = 0; b < sc.outcomes[1]; ++b) {
          const Op out = apply_choi(l.member(Position{{a, b}, {x, y}}), rho.op());
          for (int z = 0; z < charlie.settings(); ++z) {
            for (int c = 0; c < charlie.outcomes(); ++c) {
              t.at(x, y, z, a, b, c) =
                  (charlie.effect(z, c).data() * out.data()).trace().real();
            }
          }
        }
      }
    }
  }
  return t;
}

bool perfect_key_check(const CorrelationTable& t, int x, int y, double tol) {
  if (t.outcomes_a() != 2 || t.outcomes_b() != 2 || t.outcomes_c() != 2) return false;
  if (x < 0 || x >= t.settings_x() || y < 0 || y >= t.settings_y()) return false;
  for (int z = 0; z < t.settings_z(); ++z) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          const bool agree = a == b && b == c;
          const double expected = agree ? 0.5 : 0.0;
          if (std::abs(t.at(x, y, z, a, b, c) - expected) > tol) return false;
        }
      }
    }
  }
  return true;
}

PinningCertificate eavesdropper_pinning(const PureAssemblage& p, int x, int y,
                                        const Tolerances& tol) {
  if (p.scenario.parties != 2) throw InputError("eavesdropper pinning needs two parties");
  if (x < 0 || x >= p.scenario.settings[0] || y < 0 || y >= p.scenario.settings[1]) {
    throw InputError("key settings out of range");
  }
  PinningCertificate cert;
  cert.x = x;
  cert.y = y;
  cert.analysis = decomposition_analysis(p, ConstraintMode::kAsymNs, tol);
  cert.certified = true;
  for (int a = 0; a < p.scenario.outcomes[0]; ++a) {
    for (int b = 0; b < p.scenario.outcomes[1]; ++b) {
      const int flat = p.scenario.index(Position{{a, b}, {x, y}});
      if (!p.members[flat]) continue;
      const bool pinned = cert.analysis.is_pinned(flat);
      cert.members.emplace_back(flat, pinned);
      cert.certified = cert.certified && pinned;
    }
  }
  return cert;
}

}  // namespace chanasm
