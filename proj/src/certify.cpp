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

#include "chanasm/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "chanasm/channel_assemblage.hpp"

namespace chanasm {

const char* to_string(ConstraintMode mode) {
  return mode == ConstraintMode::kFullNs ? "full" : "asym";
}

ConstraintMode parse_constraint_mode(const std::string& name) {
  if (name == "full" || name == "FULL_NS") return ConstraintMode::kFullNs;
  if (name == "asym" || name == "ASYM_NS") return ConstraintMode::kAsymNs;
  throw InputError("unknown constraint mode '" + name + "'");
}

const char* to_string(Verdict verdict) {
  return verdict == Verdict::kUniqueExtreme ? "UNIQUE_EXTREME" : "NON_UNIQUE";
}

bool ExtremalityCertificate::is_pinned(int flat_position) const {
  return std::find(pinned.begin(), pinned.end(), flat_position) != pinned.end();
}

namespace {

// Accumulates blocks of real rows.
class RowBuilder {
 public:
  explicit RowBuilder(int columns) : columns_(columns) {}

  // sum_k sign_k * c_{col_k} * vec(op_k) = rhs
  void add(const std::vector<std::pair<int, RVector>>& terms, const RVector& rhs) {
    const Eigen::Index height = rhs.size();
    RMatrix block = RMatrix::Zero(height, columns_);
    for (const auto& [col, v] : terms) block.col(col) += v;
    blocks_.push_back(std::move(block));
    rhs_.push_back(rhs);
  }

  void finish(LinearSystem& sys) const {
    Eigen::Index rows = 0;
    for (const auto& b : blocks_) rows += b.rows();
    sys.a.resize(rows, columns_);
    sys.b.resize(rows);
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      sys.a.middleRows(r, blocks_[k].rows()) = blocks_[k];
      sys.b.segment(r, blocks_[k].rows()) = rhs_[k];
      r += blocks_[k].rows();
    }
  }

 private:
  int columns_;
  std::vector<RMatrix> blocks_;
  std::vector<RVector> rhs_;
};

struct Pattern {
  const PureAssemblage& p;
  std::vector<int> column_of;  // flat position -> column or -1
  std::vector<Op> unit_ops;    // per column

  explicit Pattern(const PureAssemblage& pa) : p(pa), column_of(pa.members.size(), -1) {
    for (std::size_t i = 0; i < pa.members.size(); ++i) {
      if (pa.members[i]) {
        column_of[i] = static_cast<int>(unit_ops.size());
        unit_ops.push_back(pa.members[i]->ket.projector());
      }
    }
  }
};

std::vector<std::vector<int>> all_tuples(const std::vector<int>& radix) {
  std::vector<std::vector<int>> out;
  const int count = dim_product(radix);
  for (int t = 0; t < count; ++t) {
    std::vector<int> digits(radix.size());
    int rest = t;
    for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
      digits[i] = rest % radix[i];
      rest /= radix[i];
    }
    out.push_back(std::move(digits));
  }
  return out;
}

using Transform = std::function<Op(const Op&)>;

// Terms for sum over `flats` of c * vec(transform(omega)) with the given sign.
void append_terms(const Pattern& pat, const std::vector<int>& flats, double sign,
                  const Transform& transform, std::vector<std::pair<int, RVector>>& terms) {
  for (int f : flats) {
    const int col = pat.column_of[f];
    if (col < 0) continue;
    terms.emplace_back(col, sign * real_vectorize(transform(pat.unit_ops[col])));
  }
}

// Equality of two operator sums, both transformed.
void equality_rows(RowBuilder& rows, const Pattern& pat, const std::vector<int>& lhs,
                   const std::vector<int>& rhs, const Transform& transform, Eigen::Index height) {
  std::vector<std::pair<int, RVector>> terms;
  append_terms(pat, lhs, 1.0, transform, terms);
  append_terms(pat, rhs, -1.0, transform, terms);
  rows.add(terms, RVector::Zero(height));
}

void build_full(const Pattern& pat, RowBuilder& rows) {
  const Scenario& sc = pat.p.scenario;
  const int side = dim_product(pat.p.member_dims);
  const Eigen::Index height = 2 * side * side;
  const Transform identity = [](const Op& o) { return o; };

  const unsigned full = (1u << sc.parties) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    std::vector<int> in, out;
    for (int i = 0; i < sc.parties; ++i) ((mask >> i) & 1u ? in : out).push_back(i);
    std::vector<int> in_outcomes, in_settings, out_settings, out_outcomes;
    for (int i : in) {
      in_outcomes.push_back(sc.outcomes[i]);
      in_settings.push_back(sc.settings[i]);
    }
    for (int i : out) {
      out_settings.push_back(sc.settings[i]);
      out_outcomes.push_back(sc.outcomes[i]);
    }
    for (const auto& a_sub : all_tuples(in_outcomes)) {
      for (const auto& x_sub : all_tuples(in_settings)) {
        auto flats_at = [&](const std::vector<int>& x_rest) {
          std::vector<int> flats;
          for (const auto& a_rest : all_tuples(out_outcomes)) {
            Position pos{std::vector<int>(sc.parties), std::vector<int>(sc.parties)};
            for (std::size_t k = 0; k < in.size(); ++k) {
              pos.a[in[k]] = a_sub[k];
              pos.x[in[k]] = x_sub[k];
            }
            for (std::size_t k = 0; k < out.size(); ++k) {
              pos.a[out[k]] = a_rest[k];
              pos.x[out[k]] = x_rest[k];
            }
            flats.push_back(sc.index(pos));
          }
          return flats;
        };
        const auto rests = all_tuples(out_settings);
        const std::vector<int> anchor = flats_at(rests.front());
        for (std::size_t r = 1; r < rests.size(); ++r) {
          equality_rows(rows, pat, flats_at(rests[r]), anchor, identity, height);
        }
      }
    }
  }

  auto flats_of_setting = [&](int xt) {
    std::vector<int> flats;
    for (int at = 0; at < sc.outcome_tuples(); ++at) flats.push_back(xt * sc.outcome_tuples() + at);
    return flats;
  };
  const std::vector<int> anchor = flats_of_setting(0);
  for (int xt = 1; xt < sc.setting_tuples(); ++xt) {
    equality_rows(rows, pat, flats_of_setting(xt), anchor, identity, height);
  }
  const Transform trace = [](const Op& o) { return Op({1}, CMatrix::Constant(1, 1, o.trace())); };
  for (int xt = 0; xt < sc.setting_tuples(); ++xt) {
    std::vector<std::pair<int, RVector>> terms;
    append_terms(pat, flats_of_setting(xt), 1.0, trace, terms);
    RVector rhs = RVector::Zero(2);
    rhs(0) = 1.0;
    rows.add(terms, rhs);
  }
}

void build_asym(const Pattern& pat, RowBuilder& rows) {
  const Scenario& sc = pat.p.scenario;
  const int side = dim_product(pat.p.member_dims);
  if (sc.d_ct * sc.d_c != side) {
    throw DimensionError("asymmetric mode needs members on C~ (x) C with d_ct * d_c = " +
                         std::to_string(side));
  }
  const Eigen::Index full_height = 2 * side * side;
  const Eigen::Index reduced_height = 2 * sc.d_c * sc.d_c;
  const Transform identity = [](const Op& o) { return o; };
  const Transform reduce = [&](const Op& o) { return reduce_output(o, sc.d_ct, sc.d_c); };
  const int ka = sc.outcomes[0], kb = sc.outcomes[1];
  const int ma = sc.settings[0], mb = sc.settings[1];
  auto flat = [&](int a, int b, int x, int y) { return sc.index(Position{{a, b}, {x, y}}); };

  for (int y = 0; y < mb; ++y) {
    for (int b = 0; b < kb; ++b) {
      auto a_sum = [&](int x) {
        std::vector<int> f;
        for (int a = 0; a < ka; ++a) f.push_back(flat(a, b, x, y));
        return f;
      };
      for (int x = 1; x < ma; ++x) equality_rows(rows, pat, a_sum(x), a_sum(0), identity, full_height);
    }
  }
  for (int x = 0; x < ma; ++x) {
    for (int a = 0; a < ka; ++a) {
      auto b_sum = [&](int y) {
        std::vector<int> f;
        for (int b = 0; b < kb; ++b) f.push_back(flat(a, b, x, y));
        return f;
      };
      for (int y = 1; y < mb; ++y) {
        equality_rows(rows, pat, b_sum(y), b_sum(0), reduce, reduced_height);
      }
    }
  }
  auto total = [&](int x, int y) {
    std::vector<int> f;
    for (int a = 0; a < ka; ++a) {
      for (int b = 0; b < kb; ++b) f.push_back(flat(a, b, x, y));
    }
    return f;
  };
  for (int x = 0; x < ma; ++x) {
    for (int y = 0; y < mb; ++y) {
      if (x == 0 && y == 0) continue;
      equality_rows(rows, pat, total(x, y), total(0, 0), identity, full_height);
    }
  }
  std::vector<std::pair<int, RVector>> terms;
  append_terms(pat, total(0, 0), 1.0, reduce, terms);
  const CMatrix target = CMatrix::Identity(sc.d_c, sc.d_c) / static_cast<double>(sc.d_c);
  rows.add(terms, real_vectorize(target));
}

}  // namespace

LinearSystem build_constraint_system(const PureAssemblage& p, ConstraintMode mode) {
  p.scenario.validate();
  if (static_cast<int>(p.members.size()) != p.scenario.positions()) {
    throw DimensionError("pure assemblage member count does not match scenario");
  }
  if (mode == ConstraintMode::kAsymNs && p.scenario.parties != 2) {
    throw InputError("asymmetric mode needs exactly two parties");
  }
  const Pattern pat(p);
  LinearSystem sys;
  sys.reference.resize(static_cast<Eigen::Index>(pat.unit_ops.size()));
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    if (pat.column_of[i] >= 0) {
      sys.positions.push_back(static_cast<int>(i));
      sys.reference(pat.column_of[i]) = p.members[i]->weight;
    }
  }
  RowBuilder rows(static_cast<int>(pat.unit_ops.size()));
  if (mode == ConstraintMode::kFullNs) {
    build_full(pat, rows);
  } else {
    build_asym(pat, rows);
  }
  rows.finish(sys);
  return sys;
}

ExtremalityCertificate decomposition_analysis(const PureAssemblage& p, ConstraintMode mode,
                                              const Tolerances& tol) {
  tol.validate();
  const LinearSystem sys = build_constraint_system(p, mode);
  ExtremalityCertificate cert;
  cert.mode = mode;
  cert.scenario = p.scenario;
  cert.positions = sys.positions;
  cert.reference = sys.reference;
  cert.reference_residual =
      sys.a.rows() ? (sys.a * sys.reference - sys.b).cwiseAbs().maxCoeff() : 0.0;
  if (cert.reference_residual > tol.abs_tol) {
    throw InputError("reference coefficients violate the constraint system (residual " +
                     std::to_string(cert.reference_residual) + ")");
  }
  for (Eigen::Index i = 0; i < sys.reference.size(); ++i) {
    if (!(sys.reference(i) > 0)) throw InputError("reference coefficients must be positive");
  }

  cert.null_basis = nullspace(sys.a, tol.rank_rel_tol);
  const Eigen::Index n = sys.a.cols();
  cert.nullity = static_cast<int>(cert.null_basis.cols());
  cert.rank = static_cast<int>(n) - cert.nullity;
  cert.recovered = sys.a.rows() ? RVector(sys.a.completeOrthogonalDecomposition().solve(sys.b))
                                : sys.reference;

  for (Eigen::Index i = 0; i < n; ++i) {
    const double reach = cert.nullity ? cert.null_basis.row(i).cwiseAbs().maxCoeff() : 0.0;
    if (reach < tol.abs_tol) cert.pinned.push_back(sys.positions[i]);
  }

  if (cert.nullity == 0) {
    cert.verdict = Verdict::kUniqueExtreme;
    return cert;
  }
  cert.verdict = Verdict::kNonUnique;
  const RVector v = cert.null_basis.col(0);
  double t_max = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v(i)) > tol.abs_tol) t_max = std::min(t_max, sys.reference(i) / std::abs(v(i)));
  }
  const double eps = 0.5 * t_max;
  cert.witness_pair = std::make_pair(RVector(sys.reference + eps * v),
                                     RVector(sys.reference - eps * v));
  return cert;
}

std::optional<std::pair<int, int>> inflexibility_structural_check(const PureAssemblage& p,
                                                                  const Tolerances& tol) {
  const Scenario& sc = p.scenario;
  if (sc.parties != 2 || sc.settings != std::vector<int>{2, 2} ||
      sc.outcomes != std::vector<int>{2, 2}) {
    throw InputError("structural inflexibility check needs two parties, two settings, two outcomes");
  }
  auto distinct = [&](const std::vector<Position>& set) {
    std::vector<const CVector*> kets;
    for (const Position& pos : set) {
      const auto& m = p.members[sc.index(pos)];
      if (!m) return false;
      kets.push_back(&m->ket.data());
    }
    for (std::size_t i = 0; i < kets.size(); ++i) {
      for (std::size_t j = i + 1; j < kets.size(); ++j) {
        if (std::abs(kets[i]->dot(*kets[j])) > 1.0 - tol.abs_tol) return false;
      }
    }
    return true;
  };
  for (int y1 = 0; y1 < 2; ++y1) {
    for (int y2 = 0; y2 < 2; ++y2) {
      std::vector<Position> s0, s1, s2;
      for (int o = 0; o < 2; ++o) {
        for (int s = 0; s < 2; ++s) {
          s0.push_back({{0, o}, {y1, s}});
          s1.push_back({{1, o}, {y1, s}});
          s2.push_back({{o, 0}, {s, y2}});
        }
      }
      if (distinct(s0) && distinct(s1) && distinct(s2)) return std::make_pair(y1, y2);
    }
  }
  return std::nullopt;
}

Witness Witness::from_reference(const Assemblage& reference, double tol) {
  Witness w{reference.member_dims(), reference.scenario(), {}};
  for (const Op& m : reference.members()) {
    const Complex tr = m.trace();
    if (std::abs(tr) < tol) {
      w.normalized.emplace_back(std::nullopt);
    } else {
      w.normalized.emplace_back(Op(m.dims(), m.data() / tr));
    }
  }
  return w;
}

double witness_eval(const Witness& w, const Assemblage& s) {
  if (s.member_dims() != w.member_dims || s.scenario().settings != w.scenario.settings ||
      s.scenario().outcomes != w.scenario.outcomes) {
    throw DimensionError("witness and assemblage shapes differ");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < w.normalized.size(); ++i) {
    if (!w.normalized[i]) continue;
    value += (w.normalized[i]->data() * s.member(static_cast<int>(i)).data()).trace().real();
  }
  return value;
}

Assemblage assemblage_from_coefficients(const PureAssemblage& p, const std::vector<int>& positions,
                                        const RVector& c) {
  if (static_cast<Eigen::Index>(positions.size()) != c.size()) {
    throw DimensionError("coefficient vector length mismatch");
  }
  std::vector<Op> members(p.members.size(), Op::zero(p.member_dims));
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const auto& m = p.members.at(positions[k]);
    if (!m) throw InputError("coefficient assigned to a zero position");
    members[positions[k]] = Op(p.member_dims, c(static_cast<Eigen::Index>(k)) *
                                                  m->ket.projector().data());
  }
  return Assemblage(p.scenario, p.member_dims, std::move(members));
}

}  // namespace chanasm
