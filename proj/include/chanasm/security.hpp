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

#include "chanasm/certify.hpp"
#include "chanasm/channel_assemblage.hpp"

namespace chanasm {

/// p(a,b,c|x,y,z) for two untrusted parties and a measured trusted output.
class CorrelationTable {
 public:
  CorrelationTable(int mx, int my, int mz, int ka, int kb, int kc);

  double& at(int x, int y, int z, int a, int b, int c);
  double at(int x, int y, int z, int a, int b, int c) const;

  int settings_x() const { return mx_; }
  int settings_y() const { return my_; }
  int settings_z() const { return mz_; }
  int outcomes_a() const { return ka_; }
  int outcomes_b() const { return kb_; }
  int outcomes_c() const { return kc_; }

  /// Largest |sum_{abc} p - 1| over setting triples.
  double normalization_deviation() const;

 private:
  std::size_t offset(int x, int y, int z, int a, int b, int c) const;

  int mx_, my_, mz_, ka_, kb_, kc_;
  std::vector<double> p_;
};

/// p(a,b,c|x,y,z) = Tr(M_{c|z} L_{ab|xy}(rho)).
CorrelationTable correlations(const ChannelAssemblage& l, const State& rho, const Povm& charlie);

/// True iff at (x, y) and every z, p(000) = p(111) = 1/2 and every other
/// outcome vanishes, within tol. Non-binary tables are never perfect keys.
bool perfect_key_check(const CorrelationTable& t, int x, int y, double tol);

struct PinningCertificate {
  int x = 0;
  int y = 0;
  bool certified = false;
  /// Flat positions of non-zero members at (x, y) with their pinned flags.
  std::vector<std::pair<int, bool>> members;
  ExtremalityCertificate analysis;
};

/// Every convex decomposition of the assemblage into relaxed no-signaling
/// pieces agrees at (x, y) iff all coefficients there are pinned; in that
/// case no adversarial decomposition can bias the outcomes at (x, y).
PinningCertificate eavesdropper_pinning(const PureAssemblage& p, int x, int y,
                                        const Tolerances& tol = {});

}  // namespace chanasm
