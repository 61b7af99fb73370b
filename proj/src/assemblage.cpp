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

#include "chanasm/assemblage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace chanasm {

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

int mixed_radix_index(const std::vector<int>& digits, const std::vector<int>& radix) {
  if (digits.size() != radix.size()) throw DimensionError("index length mismatch");
  int index = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= radix[i]) throw DimensionError("index digit out of range");
    index = index * radix[i] + digits[i];
  }
  return index;
}

std::vector<int> mixed_radix_digits(int index, const std::vector<int>& radix) {
  std::vector<int> digits(radix.size());
  for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
    digits[i] = index % radix[i];
    index /= radix[i];
  }
  return digits;
}

// Fixes the global phase so the largest-magnitude entry is real positive.
CVector canonical_phase(const CVector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) best = i;
  }
  if (std::abs(v(best)) == 0.0) return v;
  return v * (std::conj(v(best)) / std::abs(v(best)));
}

}  // namespace

std::string Position::str() const { return "(" + join(a) + "|" + join(x) + ")"; }

void Scenario::validate() const {
  if (parties < 1) throw InputError("scenario needs at least one party");
  if (static_cast<int>(settings.size()) != parties ||
      static_cast<int>(outcomes.size()) != parties) {
    throw InputError("scenario settings/outcomes must have one entry per party");
  }
  for (int v : settings) {
    if (v < 1) throw InputError("settings per party must be >= 1");
  }
  for (int v : outcomes) {
    if (v < 1) throw InputError("outcomes per party must be >= 1");
  }
  if (d_c < 1 || d_ct < 1) throw InputError("trusted dimensions must be >= 1");
}

int Scenario::setting_tuples() const { return dim_product(settings); }
int Scenario::outcome_tuples() const { return dim_product(outcomes); }

int Scenario::index(const Position& p) const {
  return setting_index(p.x) * outcome_tuples() + outcome_index(p.a);
}

Position Scenario::position(int index) const {
  return {outcomes_at(index % outcome_tuples()), settings_at(index / outcome_tuples())};
}

std::vector<int> Scenario::settings_at(int tuple_index) const {
  return mixed_radix_digits(tuple_index, settings);
}

std::vector<int> Scenario::outcomes_at(int tuple_index) const {
  return mixed_radix_digits(tuple_index, outcomes);
}

int Scenario::setting_index(const std::vector<int>& x) const {
  return mixed_radix_index(x, settings);
}

int Scenario::outcome_index(const std::vector<int>& a) const {
  return mixed_radix_index(a, outcomes);
}

Assemblage::Assemblage(Scenario scenario, Dims member_dims, std::vector<Op> members)
    : scenario_(std::move(scenario)),
      member_dims_(std::move(member_dims)),
      members_(std::move(members)) {
  scenario_.validate();
  if (static_cast<int>(members_.size()) != scenario_.positions()) {
    throw DimensionError("assemblage has " + std::to_string(members_.size()) +
                         " members, scenario needs " + std::to_string(scenario_.positions()));
  }
  for (const Op& m : members_) {
    if (m.dims() != member_dims_) throw DimensionError("assemblage member dims disagree");
  }
}

Op Assemblage::total(int setting_tuple) const {
  Op sum = Op::zero(member_dims_);
  const int base = setting_tuple * scenario_.outcome_tuples();
  for (int a = 0; a < scenario_.outcome_tuples(); ++a) sum += members_[base + a];
  return sum;
}

void NsReport::record(std::string constraint, std::string where, double magnitude, double tol) {
  max_deviation = std::max(max_deviation, magnitude);
  double& family = constraint_max[constraint];
  family = std::max(family, magnitude);
  if (magnitude > tol) {
    pass = false;
    violations.push_back({std::move(constraint), std::move(where), magnitude});
  }
}

namespace {

// Sum over the outcomes of the parties outside `mask` with the listed
// outcomes a_sub for parties in mask (ordered by party), at full settings x.
Op subset_sum(const Assemblage& s, unsigned mask, const std::vector<int>& a_sub,
              const std::vector<int>& x) {
  const Scenario& sc = s.scenario();
  Op sum = Op::zero(s.member_dims());
  for (int ai = 0; ai < sc.outcome_tuples(); ++ai) {
    const std::vector<int> a = sc.outcomes_at(ai);
    bool match = true;
    std::size_t k = 0;
    for (int i = 0; i < sc.parties && match; ++i) {
      if (mask & (1u << i)) match = a[i] == a_sub[k++];
    }
    if (match) sum += s.member(Position{a, x});
  }
  return sum;
}

std::vector<int> parties_in(unsigned mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

// All tuples over the given radices.
std::vector<std::vector<int>> tuples(const std::vector<int>& radix) {
  std::vector<std::vector<int>> out;
  const int count = dim_product(radix);
  for (int t = 0; t < count; ++t) out.push_back(mixed_radix_digits(t, radix));
  return out;
}

}  // namespace

NsReport verify_ns(const Assemblage& s, double tol) {
  const Scenario& sc = s.scenario();
  NsReport report;

  for (int i = 0; i < sc.positions(); ++i) {
    const Op& m = s.member(i);
    const double herm = max_abs(m.data() - m.data().adjoint());
    report.record("hermiticity", sc.position(i).str(), herm, tol);
    if (herm <= tol) report.record("positivity", sc.position(i).str(), -min_eigenvalue(m), tol);
  }

  const unsigned full = (1u << sc.parties) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    const std::vector<int> in = parties_in(mask, sc.parties);
    const std::vector<int> out = parties_in(full & ~mask, sc.parties);
    std::vector<int> in_outcomes, in_settings, out_settings;
    for (int i : in) {
      in_outcomes.push_back(sc.outcomes[i]);
      in_settings.push_back(sc.settings[i]);
    }
    for (int i : out) out_settings.push_back(sc.settings[i]);

    for (const auto& a_sub : tuples(in_outcomes)) {
      for (const auto& x_sub : tuples(in_settings)) {
        std::optional<Op> anchor;
        for (const auto& x_rest : tuples(out_settings)) {
          std::vector<int> x(sc.parties);
          for (std::size_t k = 0; k < in.size(); ++k) x[in[k]] = x_sub[k];
          for (std::size_t k = 0; k < out.size(); ++k) x[out[k]] = x_rest[k];
          Op m = subset_sum(s, mask, a_sub, x);
          if (!anchor) {
            anchor = std::move(m);
            continue;
          }
          std::ostringstream where;
          where << "parties {" << join(in) << "} a=" << join(a_sub) << " x=" << join(x);
          report.record("marginal", where.str(), max_abs(m.data() - anchor->data()), tol);
        }
      }
    }
  }

  const Op anchor = s.total(0);
  for (int xt = 1; xt < sc.setting_tuples(); ++xt) {
    report.record("total", "x=" + join(sc.settings_at(xt)),
                  max_abs(s.total(xt).data() - anchor.data()), tol);
  }
  for (int xt = 0; xt < sc.setting_tuples(); ++xt) {
    report.record("normalization", "x=" + join(sc.settings_at(xt)),
                  std::abs(s.total(xt).trace() - Complex(1.0)), tol);
  }
  return report;
}

Op marginal(const Assemblage& s, const std::vector<int>& parties, const std::vector<int>& a_sub,
            const std::vector<int>& x_sub, double tol) {
  const Scenario& sc = s.scenario();
  if (parties.size() != a_sub.size() || parties.size() != x_sub.size()) {
    throw DimensionError("marginal: party, outcome and setting lists differ in length");
  }
  if (!std::is_sorted(parties.begin(), parties.end()) ||
      std::adjacent_find(parties.begin(), parties.end()) != parties.end()) {
    throw InputError("marginal: party list must be strictly increasing");
  }
  unsigned mask = 0;
  for (int p : parties) {
    if (p < 0 || p >= sc.parties) throw DimensionError("marginal: party out of range");
    mask |= 1u << p;
  }
  const NsReport report = verify_ns(s, tol);
  if (!report.pass) {
    throw InputError("marginal: assemblage violates no-signaling (max deviation " +
                     std::to_string(report.max_deviation) + ")");
  }
  std::vector<int> x(sc.parties, 0);
  for (std::size_t k = 0; k < parties.size(); ++k) x[parties[k]] = x_sub[k];
  return subset_sum(s, mask, a_sub, x);
}

namespace {

Op project(const Op& w, const std::vector<Povm>& povms, const Position& p,
           const std::vector<int>& keep) {
  const int n = static_cast<int>(povms.size());
  std::vector<Op> factors;
  for (int i = 0; i < n; ++i) factors.push_back(povms[i].effect(p.x[i], p.a[i]));
  Dims rest(w.dims().begin() + n, w.dims().end());
  factors.push_back(Op::identity(rest));
  const Op lifted = kron(factors);
  return partial_trace(Op(w.dims(), lifted.data() * w.data()), keep);
}

}  // namespace

Assemblage assemble_from_operator(const Op& w, const std::vector<Povm>& povms) {
  const int n = static_cast<int>(povms.size());
  if (n < 1) throw InputError("realization needs at least one party");
  if (static_cast<int>(w.dims().size()) <= n) {
    throw DimensionError("realization operator has no trusted subsystem");
  }
  Scenario sc;
  sc.parties = n;
  for (int i = 0; i < n; ++i) {
    if (povms[i].dim() != w.dims()[i]) {
      throw DimensionError("POVM of party " + std::to_string(i) +
                           " does not match subsystem dimension");
    }
    sc.settings.push_back(povms[i].settings());
    sc.outcomes.push_back(povms[i].outcomes());
  }
  Dims rest(w.dims().begin() + n, w.dims().end());
  if (rest.size() == 2) {
    sc.d_ct = rest[0];
    sc.d_c = rest[1];
  } else {
    sc.d_c = sc.d_ct = dim_product(rest);
  }
  std::vector<int> keep(rest.size());
  std::iota(keep.begin(), keep.end(), n);

  std::vector<Op> members;
  members.reserve(sc.positions());
  for (int i = 0; i < sc.positions(); ++i) members.push_back(project(w, povms, sc.position(i), keep));
  return Assemblage(std::move(sc), std::move(rest), std::move(members));
}

Assemblage assemblage_from_realization(const State& rho, const std::vector<Povm>& povms) {
  return assemble_from_operator(rho.op(), povms);
}

void LhsModel::validate(const Scenario& scenario, double tol) const {
  scenario.validate();
  if (weights.size() != states.size() || weights.size() != tables.size()) {
    throw InputError("LHS model: weights, states and tables differ in length");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] >= 0)) throw InputError("LHS model: negative weight");
    total += weights[j];
    State check(states[j], tol);
    if (static_cast<int>(tables[j].size()) != scenario.parties) {
      throw InputError("LHS model: table count does not match party count");
    }
    for (int i = 0; i < scenario.parties; ++i) {
      const auto& t = tables[j][i];
      if (static_cast<int>(t.size()) != scenario.settings[i]) {
        throw InputError("LHS model: table settings mismatch");
      }
      for (const auto& row : t) {
        if (static_cast<int>(row.size()) != scenario.outcomes[i]) {
          throw InputError("LHS model: table outcomes mismatch");
        }
        double sum = 0.0;
        for (double p : row) {
          if (!(p >= -tol)) throw InputError("LHS model: negative probability");
          sum += p;
        }
        if (std::abs(sum - 1.0) > tol) throw InputError("LHS model: table row does not sum to 1");
      }
    }
  }
  if (std::abs(total - 1.0) > tol) throw InputError("LHS model: weights do not sum to 1");
}

Assemblage lhs_assemblage(const LhsModel& model, const Scenario& scenario, double tol) {
  model.validate(scenario, tol);
  const Dims dims = model.states.empty() ? Dims{scenario.d_c} : model.states.front().dims();
  std::vector<Op> members(scenario.positions(), Op::zero(dims));
  for (int idx = 0; idx < scenario.positions(); ++idx) {
    const Position p = scenario.position(idx);
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
      double coeff = model.weights[j];
      for (int i = 0; i < scenario.parties; ++i) coeff *= model.tables[j][i][p.x[i]][p.a[i]];
      if (coeff != 0.0) members[idx] += Op(model.states[j].dims(), coeff * model.states[j].data());
    }
  }
  return Assemblage(scenario, dims, std::move(members));
}

Assemblage PureAssemblage::to_assemblage() const {
  std::vector<Op> out;
  out.reserve(members.size());
  for (const auto& m : members) {
    out.push_back(m ? Op(member_dims, m->weight * m->ket.projector().data())
                    : Op::zero(member_dims));
  }
  return Assemblage(scenario, member_dims, std::move(out));
}

int PureAssemblage::nonzero_count() const {
  return static_cast<int>(std::count_if(members.begin(), members.end(),
                                        [](const auto& m) { return m.has_value(); }));
}

PureAssemblage canonicalize_pure(const Assemblage& s, const Tolerances& tol) {
  const Scenario& sc = s.scenario();
  for (int xt = 0; xt < sc.setting_tuples(); ++xt) {
    const Complex tr = s.total(xt).trace();
    if (std::abs(tr - Complex(1.0)) > tol.abs_tol) {
      throw InputError("assemblage total trace at x=" + join(sc.settings_at(xt)) + " is " +
                       std::to_string(tr.real()) + ", expected 1");
    }
  }
  PureAssemblage out{sc, s.member_dims(), {}};
  for (int i = 0; i < sc.positions(); ++i) {
    const Op& m = s.member(i);
    const double tr = m.trace().real();
    if (tr < tol.abs_tol) {
      out.members.emplace_back(std::nullopt);
      continue;
    }
    if (rank(m, tol.rank_rel_tol) >= 2) {
      throw InputError("member " + sc.position(i).str() + " has rank >= 2");
    }
    const Eigenpair e = principal_eigenpair(m);
    out.members.emplace_back(PureMember{tr, Ket(s.member_dims(), canonical_phase(e.vector))});
  }
  return out;
}

bool verify_hermitian_realization(const HermitianRealization& h, const Assemblage& s, double tol) {
  if (!is_hermitian(h.w, tol)) return false;
  const Assemblage rebuilt = assemble_from_operator(h.w, h.povms);
  if (rebuilt.scenario().settings != s.scenario().settings ||
      rebuilt.scenario().outcomes != s.scenario().outcomes ||
      rebuilt.member_dims() != s.member_dims()) {
    throw DimensionError("realization does not match assemblage shape");
  }
  for (int i = 0; i < s.scenario().positions(); ++i) {
    if (max_abs(rebuilt.member(i).data() - s.member(i).data()) > tol) return false;
  }
  return true;
}

LhsVerdict pure_lhs_decide(const PureAssemblage& p, const Tolerances& tol) {
  const Scenario& sc = p.scenario;
  LhsVerdict verdict;

  // Local deterministic functions per party, as digit strings over settings.
  std::vector<int> local_counts;
  long long total = 1;
  for (int i = 0; i < sc.parties; ++i) {
    long long count = 1;
    for (int s = 0; s < sc.settings[i]; ++s) count *= sc.outcomes[i];
    local_counts.push_back(static_cast<int>(count));
    total *= count;
    if (total > (1LL << 24)) throw InputError("pure_lhs_decide: too many deterministic strategies");
  }
  verdict.strategies = total;

  std::vector<int> rows;  // non-zero positions
  std::vector<int> row_of(sc.positions(), -1);
  for (int i = 0; i < sc.positions(); ++i) {
    if (p.members[i]) {
      row_of[i] = static_cast<int>(rows.size());
      rows.push_back(i);
    }
  }

  std::vector<DeterministicStrategy> consistent;
  std::vector<std::vector<int>> selections;
  for (long long j = 0; j < total; ++j) {
    DeterministicStrategy strat;
    long long rest = j;
    for (int i = sc.parties - 1; i >= 0; --i) {
      const int local = static_cast<int>(rest % local_counts[i]);
      rest /= local_counts[i];
      std::vector<int> radix(sc.settings[i], sc.outcomes[i]);
      strat.outputs.insert(strat.outputs.begin(), mixed_radix_digits(local, radix));
    }
    std::vector<int> selected;
    bool ok = true;
    const CVector* reference = nullptr;
    for (int xt = 0; xt < sc.setting_tuples() && ok; ++xt) {
      const std::vector<int> x = sc.settings_at(xt);
      std::vector<int> a(sc.parties);
      for (int i = 0; i < sc.parties; ++i) a[i] = strat.outputs[i][x[i]];
      const int idx = sc.index(Position{a, x});
      if (!p.members[idx]) {
        ok = false;
        break;
      }
      const CVector& ket = p.members[idx]->ket.data();
      if (reference == nullptr) {
        reference = &ket;
      } else if (std::abs(reference->dot(ket)) <= 1.0 - tol.abs_tol) {
        ok = false;
      }
      selected.push_back(idx);
    }
    if (ok) {
      consistent.push_back(std::move(strat));
      selections.push_back(std::move(selected));
    }
  }
  verdict.consistent_strategies = static_cast<long long>(consistent.size());

  if (consistent.empty()) {
    verdict.reason =
        "no deterministic strategy selects only non-zero, mutually proportional members";
    return verdict;
  }

  RMatrix m = RMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(consistent.size()));
  RVector b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) b(r) = p.members[rows[r]]->weight;
  for (std::size_t j = 0; j < selections.size(); ++j) {
    for (int idx : selections[j]) m(row_of[idx], static_cast<Eigen::Index>(j)) = 1.0;
  }
  const NnlsResult sol = nnls(m, b);
  verdict.residual = sol.residual;
  verdict.inconclusive = sol.status == NnlsStatus::kIterationLimit;
  if (sol.status != NnlsStatus::kConverged || sol.residual >= tol.nnls_residual_tol) {
    std::ostringstream reason;
    reason << "weight system over " << consistent.size()
           << " consistent strategies is infeasible (residual " << sol.residual << ")";
    verdict.reason = reason.str();
    return verdict;
  }

  LhsModel model;
  const double mass = sol.x.sum();
  for (std::size_t j = 0; j < consistent.size(); ++j) {
    if (sol.x(j) <= 0.0) continue;
    model.weights.push_back(sol.x(j) / mass);
    model.states.push_back(p.members[selections[j].front()]->ket.projector());
    std::vector<std::vector<std::vector<double>>> table(sc.parties);
    for (int i = 0; i < sc.parties; ++i) {
      table[i].assign(sc.settings[i], std::vector<double>(sc.outcomes[i], 0.0));
      for (int x = 0; x < sc.settings[i]; ++x) table[i][x][consistent[j].outputs[i][x]] = 1.0;
    }
    model.tables.push_back(std::move(table));
  }
  verdict.local = true;
  verdict.model = std::move(model);
  verdict.reason = "feasible weights over consistent deterministic strategies";
  return verdict;
}

}  // namespace chanasm
