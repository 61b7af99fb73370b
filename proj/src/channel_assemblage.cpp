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

#include "chanasm/channel_assemblage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace chanasm {

namespace {

std::string settings_str(const std::vector<int>& x) {
  std::ostringstream out;
  out << "x=";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
  return out.str();
}

}  // namespace

ChannelAssemblage::ChannelAssemblage(Scenario scenario, std::vector<ChoiOp> members, double tol)
    : scenario_(std::move(scenario)), members_(std::move(members)) {
  scenario_.validate();
  if (static_cast<int>(members_.size()) != scenario_.positions()) {
    throw DimensionError("channel assemblage member count does not match scenario");
  }
  for (int i = 0; i < scenario_.positions(); ++i) {
    const ChoiOp& m = members_[i];
    if (m.in_dim() != scenario_.d_c || m.out_dim() != scenario_.d_ct) {
      throw DimensionError("channel assemblage member dims do not match scenario");
    }
    if (!is_psd(m.op(), tol)) {
      throw InputError("member " + scenario_.position(i).str() + " is not completely positive");
    }
  }
}

Assemblage ChannelAssemblage::choi_family() const {
  std::vector<Op> ops;
  ops.reserve(members_.size());
  for (const ChoiOp& m : members_) ops.push_back(m.flat());
  return Assemblage(scenario_, {scenario_.d_ct, scenario_.d_c}, std::move(ops));
}

Op reduce_output(const Op& choi_member, int d_ct, int d_c) {
  return partial_trace(Op({d_ct, d_c}, choi_member.data()), {1});
}

ChannelAssemblage chanasm_from_realization(const State& rho_a, const std::vector<Povm>& povms,
                                           const ChoiOp& e, double tol) {
  const int n = static_cast<int>(povms.size());
  const Dims& a_dims = rho_a.dims();
  if (static_cast<int>(a_dims.size()) != n) {
    throw DimensionError("party state must have one factor per POVM");
  }
  if (static_cast<int>(e.in_dims().size()) != n + 1 ||
      static_cast<int>(e.out_dims().size()) != n + 1) {
    throw DimensionError("channel must act on the parties and the trusted system");
  }
  for (int i = 0; i < n; ++i) {
    if (e.in_dims()[i] != a_dims[i] || e.out_dims()[i] != a_dims[i]) {
      throw DimensionError("channel factor " + std::to_string(i) +
                           " does not match the party dimension");
    }
  }
  const CptpReport cptp = verify_cptp(e, tol);
  if (!cptp.cp || !cptp.tp) throw InputError("realization channel is not CPTP");

  const int d_c = e.in_dims().back();
  const Op input = kron(rho_a.op(), maximally_entangled(d_c).projector());
  std::vector<int> targets(n + 1);
  std::iota(targets.begin(), targets.end(), 0);
  const Op rho = apply_channel_on_subsystems(e, input, targets);

  const Assemblage family = assemble_from_operator(rho, povms);
  std::vector<ChoiOp> members;
  const int d_ct = e.out_dims().back();
  for (const Op& m : family.members()) members.emplace_back(Dims{d_ct}, Dims{d_c}, m.data(), tol);
  Scenario sc = family.scenario();
  sc.d_c = d_c;
  sc.d_ct = d_ct;
  return ChannelAssemblage(std::move(sc), std::move(members), tol);
}

Assemblage to_choi_assemblage(const ChannelAssemblage& l, double tol) {
  Assemblage family = l.choi_family();
  for (int xt = 0; xt < l.scenario().setting_tuples(); ++xt) {
    const Complex tr = family.total(xt).trace();
    if (std::abs(tr - Complex(1.0)) > tol) {
      throw InputError("channel totals at " + settings_str(l.scenario().settings_at(xt)) +
                       " are not trace-normalized");
    }
  }
  return family;
}

NsChannelReport verify_ns_channel(const ChannelAssemblage& l, double tol) {
  NsChannelReport report;
  const Assemblage family = l.choi_family();
  report.ns = verify_ns(family, tol);
  const Scenario& sc = l.scenario();
  const ChoiOp total({sc.d_ct}, {sc.d_c}, family.total(0).data(), 1.0);
  const CptpReport cptp = verify_cptp(total, tol);
  report.total_cp = cptp.cp;
  report.total_tp = cptp.tp;
  report.trace_condition_deviation = cptp.tp_deviation;
  report.max_deviation = std::max(report.ns.max_deviation, report.trace_condition_deviation);
  report.pass = report.ns.pass && report.total_cp && report.total_tp;
  return report;
}

ChannelAssemblage local_channel_assemblage(
    const std::vector<std::vector<std::vector<std::vector<double>>>>& tables,
    const std::vector<ChoiOp>& maps, const Scenario& scenario, double tol) {
  scenario.validate();
  if (tables.size() != maps.size() || maps.empty()) {
    throw InputError("local channel assemblage: tables and maps differ in length");
  }
  CMatrix sum = CMatrix::Zero(scenario.d_ct * scenario.d_c, scenario.d_ct * scenario.d_c);
  for (const ChoiOp& m : maps) {
    if (m.in_dim() != scenario.d_c || m.out_dim() != scenario.d_ct) {
      throw DimensionError("local channel assemblage: map dims do not match scenario");
    }
    if (!is_psd(m.op(), tol)) throw InputError("local channel assemblage: map is not CP");
    sum += m.op().data();
  }
  const CptpReport cptp = verify_cptp(ChoiOp({scenario.d_ct}, {scenario.d_c}, sum, 1.0), tol);
  if (!cptp.cp || !cptp.tp) throw InputError("local channel assemblage: sum of maps is not CPTP");

  std::vector<ChoiOp> members;
  for (int idx = 0; idx < scenario.positions(); ++idx) {
    const Position p = scenario.position(idx);
    CMatrix m = CMatrix::Zero(sum.rows(), sum.cols());
    for (std::size_t j = 0; j < maps.size(); ++j) {
      if (static_cast<int>(tables[j].size()) != scenario.parties) {
        throw InputError("local channel assemblage: table count does not match parties");
      }
      double coeff = 1.0;
      for (int i = 0; i < scenario.parties; ++i) {
        const auto& row = tables[j][i].at(p.x[i]);
        coeff *= row.at(p.a[i]);
      }
      m += coeff * maps[j].op().data();
    }
    members.emplace_back(Dims{scenario.d_ct}, Dims{scenario.d_c}, std::move(m), tol);
  }
  return ChannelAssemblage(scenario, std::move(members), tol);
}

ChoiOp channel_totals(const ChannelAssemblage& l, double tol) {
  const Assemblage family = l.choi_family();
  const Scenario& sc = l.scenario();
  const Op anchor = family.total(0);
  for (int xt = 1; xt < sc.setting_tuples(); ++xt) {
    const double dev = max_abs(family.total(xt).data() - anchor.data());
    if (dev > tol) {
      throw InputError("channel totals depend on settings at " +
                       settings_str(sc.settings_at(xt)));
    }
  }
  ChoiOp total({sc.d_ct}, {sc.d_c}, anchor.data(), tol);
  const CptpReport cptp = verify_cptp(total, tol);
  if (!cptp.cp || !cptp.tp) throw InputError("channel totals do not form a channel");
  return total;
}

NsReport verify_asym_ns(const ChannelAssemblage& l, double tol) {
  const Scenario& sc = l.scenario();
  if (sc.parties != 2) throw InputError("asymmetric no-signaling needs exactly two parties");
  const Assemblage family = l.choi_family();
  const int ka = sc.outcomes[0], kb = sc.outcomes[1];
  const int ma = sc.settings[0], mb = sc.settings[1];
  auto member = [&](int a, int b, int x, int y) -> const Op& {
    return family.member(Position{{a, b}, {x, y}});
  };
  NsReport report;

  for (int y = 0; y < mb; ++y) {
    for (int b = 0; b < kb; ++b) {
      auto a_sum = [&](int x) {
        Op s = Op::zero(family.member_dims());
        for (int a = 0; a < ka; ++a) s += member(a, b, x, y);
        return s;
      };
      const Op anchor = a_sum(0);
      for (int x = 1; x < ma; ++x) {
        std::ostringstream where;
        where << "b=" << b << " y=" << y << " x=" << x;
        report.record("a-sum", where.str(), max_abs(a_sum(x).data() - anchor.data()), tol);
      }
    }
  }

  for (int x = 0; x < ma; ++x) {
    for (int a = 0; a < ka; ++a) {
      auto b_trace = [&](int y) {
        Op s = Op::zero(family.member_dims());
        for (int b = 0; b < kb; ++b) s += member(a, b, x, y);
        return reduce_output(s, sc.d_ct, sc.d_c);
      };
      const Op anchor = b_trace(0);
      for (int y = 1; y < mb; ++y) {
        std::ostringstream where;
        where << "a=" << a << " x=" << x << " y=" << y;
        report.record("b-trace", where.str(), max_abs(b_trace(y).data() - anchor.data()), tol);
      }
    }
  }

  const Op anchor = family.total(0);
  for (int xt = 1; xt < sc.setting_tuples(); ++xt) {
    report.record("total", settings_str(sc.settings_at(xt)),
                  max_abs(family.total(xt).data() - anchor.data()), tol);
  }
  const Op reduced = reduce_output(anchor, sc.d_ct, sc.d_c);
  report.record("channel", "x=0,0",
                max_abs(reduced.data() - CMatrix::Identity(sc.d_c, sc.d_c) /
                                             static_cast<double>(sc.d_c)),
                tol);
  return report;
}

}  // namespace chanasm
