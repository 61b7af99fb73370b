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

#include "chanasm/document.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "chanasm/resources.hpp"

namespace chanasm {

using nlohmann::json;

const char* to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::kState:
      return "state";
    case DocumentKind::kPovm:
      return "povm";
    case DocumentKind::kChannel:
      return "channel";
    case DocumentKind::kAssemblage:
      return "assemblage";
    case DocumentKind::kChannelAssemblage:
      return "channel_assemblage";
    case DocumentKind::kRealization:
      return "realization";
  }
  return "unknown";
}

DocumentError::DocumentError(std::string location, const std::string& message)
    : InputError(location + ": " + message), location_(std::move(location)) {}

DocumentKind Document::kind() const { return static_cast<DocumentKind>(payload.index()); }

Assemblage AssemblageSpec::to_assemblage() const {
  std::vector<Op> ops;
  ops.reserve(members.size());
  for (const auto& m : members) ops.push_back(m ? m->op : Op::zero(member_dims));
  return Assemblage(scenario, member_dims, std::move(ops));
}

ChannelAssemblage ChannelAssemblageSpec::to_channel_assemblage(double tol) const {
  const Scenario& sc = members.scenario;
  std::vector<ChoiOp> chois;
  chois.reserve(members.members.size());
  for (const auto& m : members.members) {
    const CMatrix data = m ? m->op.data() : CMatrix::Zero(sc.d_ct * sc.d_c, sc.d_ct * sc.d_c);
    chois.emplace_back(Dims{sc.d_ct}, Dims{sc.d_c}, data, tol);
  }
  return ChannelAssemblage(sc, std::move(chois), tol);
}

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// A JSON value with its pointer path, for path-addressed errors.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const json& value() const { return value_; }
  std::string where() const { return path_.empty() ? "/" : path_; }

  [[noreturn]] void fail(const std::string& message) const { throw DocumentError(where(), message); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!value_.is_object()) fail("expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, unused] : value_.items()) {
      if (!keys.count(key)) child_path_fail(key, "unknown key");
    }
  }

  bool has(const char* key) const { return value_.contains(key); }

  Node at(const char* key) const {
    if (!value_.contains(key)) fail(std::string("missing required key '") + key + "'");
    return Node(value_.at(key), path_ + "/" + escape_pointer(key));
  }

  std::size_t size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

  Node operator[](std::size_t i) const {
    return Node(value_.at(i), path_ + "/" + std::to_string(i));
  }

  int as_int(int min_value) const {
    if (!value_.is_number_integer()) fail("expected an integer");
    const auto v = value_.get<long long>();
    if (v < min_value || v > (1 << 20)) fail("integer out of range");
    return static_cast<int>(v);
  }

  double as_double() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("non-finite number");
    return v;
  }

  std::string as_string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Complex as_complex() const {
    if (value_.is_number()) return Complex(as_double(), 0.0);
    if (!value_.is_array() || value_.size() != 2) fail("expected a complex number [re, im]");
    return Complex((*this)[0].as_double(), (*this)[1].as_double());
  }

  std::vector<int> as_ints(int min_value) const {
    std::vector<int> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i].as_int(min_value);
    return out;
  }

  Dims as_dims() const {
    Dims d = value_.is_number_integer() ? Dims{as_int(1)} : as_ints(1);
    if (d.empty()) fail("dims must not be empty");
    return d;
  }

  CVector as_vector(int expected) const {
    const std::size_t n = size();
    if (expected >= 0 && static_cast<int>(n) != expected) {
      fail("expected " + std::to_string(expected) + " entries, got " + std::to_string(n));
    }
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = (*this)[i].as_complex();
    return v;
  }

  CMatrix as_matrix(int rows, int cols) const {
    if (static_cast<int>(size()) != rows) {
      fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(size()));
    }
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) m.row(r) = (*this)[r].as_vector(cols).transpose();
    return m;
  }

  // Runs f, re-raising library errors at this node's path.
  template <typename F>
  auto guard(F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const DocumentError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

 private:
  [[noreturn]] void child_path_fail(const std::string& key, const std::string& message) const {
    throw DocumentError(path_ + "/" + escape_pointer(key), message);
  }

  const json& value_;
  std::string path_;
};

State parse_state(const Node& n, double tol) {
  n.expect_object({"dims", "matrix", "ket"});
  const Dims dims = n.at("dims").as_dims();
  const int side = dim_product(dims);
  if (n.has("matrix") == n.has("ket")) n.fail("state needs exactly one of 'matrix' or 'ket'");
  if (n.has("ket")) {
    const Ket k(dims, n.at("ket").as_vector(side));
    return n.guard([&] { return State(k.projector(), tol); });
  }
  const CMatrix m = n.at("matrix").as_matrix(side, side);
  return n.guard([&] { return State(Op(dims, m), tol); });
}

Povm parse_povm(const Node& n, double tol) {
  n.expect_object({"dims", "effects", "bases"});
  const Dims dims = n.at("dims").as_dims();
  const int side = dim_product(dims);
  if (n.has("effects") == n.has("bases")) n.fail("POVM needs exactly one of 'effects' or 'bases'");
  if (n.has("bases")) {
    const Node bases = n.at("bases");
    std::vector<std::vector<Ket>> kets(bases.size());
    for (std::size_t s = 0; s < kets.size(); ++s) {
      const Node basis = bases[s];
      for (std::size_t o = 0; o < basis.size(); ++o) {
        kets[s].emplace_back(dims, basis[o].as_vector(side));
      }
    }
    return n.guard([&] { return Povm::projective(kets, tol); });
  }
  const Node effects = n.at("effects");
  std::vector<std::vector<Op>> ops(effects.size());
  for (std::size_t s = 0; s < ops.size(); ++s) {
    const Node row = effects[s];
    for (std::size_t o = 0; o < row.size(); ++o) {
      ops[s].emplace_back(dims, row[o].as_matrix(side, side));
    }
  }
  return n.guard([&] { return Povm(std::move(ops), tol); });
}

ChannelSpec parse_channel(const Node& n, double tol) {
  n.expect_object({"in_dim", "out_dim", "kraus", "choi"});
  const Dims in = n.at("in_dim").as_dims();
  const Dims out = n.at("out_dim").as_dims();
  const int din = dim_product(in), dout = dim_product(out);
  if (n.has("kraus") == n.has("choi")) n.fail("channel needs exactly one of 'kraus' or 'choi'");
  if (n.has("kraus")) {
    const Node list = n.at("kraus");
    std::vector<CMatrix> kraus;
    for (std::size_t i = 0; i < list.size(); ++i) kraus.push_back(list[i].as_matrix(dout, din));
    KrausChannel k{in, out, kraus};
    ChoiOp choi = n.guard([&] {
      k.validate(tol);
      return choi_of_kraus(k);
    });
    return ChannelSpec{in, out, std::move(kraus), std::move(choi)};
  }
  const CMatrix j = n.at("choi").as_matrix(dout * din, dout * din);
  ChoiOp choi = n.guard([&] { return ChoiOp(out, in, j, tol); });
  return ChannelSpec{in, out, std::nullopt, std::move(choi)};
}

Scenario parse_scenario(const Node& n, bool channel) {
  n.expect_object({"settings", "outcomes", "d_c", "d_ct"});
  Scenario sc;
  sc.settings = n.at("settings").as_ints(1);
  sc.outcomes = n.at("outcomes").as_ints(1);
  sc.parties = static_cast<int>(sc.settings.size());
  if (channel || n.has("d_c")) sc.d_c = n.at("d_c").as_int(1);
  if (channel || n.has("d_ct")) sc.d_ct = n.at("d_ct").as_int(1);
  n.guard([&] { sc.validate(); });
  if (sc.positions() > (1 << 20)) n.fail("scenario is too large");
  return sc;
}

AssemblageSpec parse_members(const Node& n, Scenario sc, Dims member_dims, const char* matrix_key,
                             double tol) {
  const int side = dim_product(member_dims);
  AssemblageSpec spec{std::move(sc), std::move(member_dims), {}};
  spec.members.resize(spec.scenario.positions());
  const Node list = n.at("members");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Node m = list[i];
    m.expect_object({"a", "x", matrix_key, "ket", "weight"});
    Position pos{m.at("a").as_ints(0), m.at("x").as_ints(0)};
    const int flat = m.guard([&] { return spec.scenario.index(pos); });
    if (spec.members[flat]) m.fail("duplicate member at " + pos.str());
    MemberSpec member{Op::zero(spec.member_dims), std::nullopt};
    if (m.has(matrix_key) == m.has("ket")) {
      m.fail(std::string("member needs exactly one of '") + matrix_key + "' or 'ket'");
    }
    if (m.has("ket")) {
      const double weight = m.has("weight") ? m.at("weight").as_double() : 1.0;
      if (weight < 0) m.at("weight").fail("weight must be non-negative");
      Ket k(spec.member_dims, m.at("ket").as_vector(side));
      if (std::abs(k.norm() - 1.0) > tol) m.at("ket").fail("ket must be normalized");
      member.op = Op(spec.member_dims, weight * k.projector().data());
      member.pure = PureMember{weight, std::move(k)};
    } else {
      if (m.has("weight")) m.at("weight").fail("weight is only allowed with 'ket'");
      member.op = Op(spec.member_dims, m.at(matrix_key).as_matrix(side, side));
    }
    spec.members[flat] = std::move(member);
  }
  return spec;
}

AssemblageSpec parse_assemblage(const Node& n, double tol) {
  n.expect_object({"kind", "version", "note", "scenario", "member_dims", "members"});
  Scenario sc = parse_scenario(n.at("scenario"), false);
  Dims dims = n.at("member_dims").as_dims();
  return parse_members(n, std::move(sc), std::move(dims), "member", tol);
}

ChannelAssemblageSpec parse_channel_assemblage(const Node& n, double tol) {
  n.expect_object({"kind", "version", "note", "scenario", "members"});
  Scenario sc = parse_scenario(n.at("scenario"), true);
  Dims dims{sc.d_ct, sc.d_c};
  ChannelAssemblageSpec spec{parse_members(n, std::move(sc), std::move(dims), "choi", tol)};
  n.guard([&] { spec.to_channel_assemblage(tol); });
  return spec;
}

RealizationSpec parse_realization(const Node& n, double tol) {
  n.expect_object({"kind", "version", "note", "party_state", "povms", "channel", "key"});
  State party = parse_state(n.at("party_state"), tol);
  const Node list = n.at("povms");
  std::vector<Povm> povms;
  for (std::size_t i = 0; i < list.size(); ++i) povms.push_back(parse_povm(list[i], tol));
  const Dims& pd = party.dims();
  if (povms.size() != pd.size()) {
    list.fail("expected one POVM per party state factor (" + std::to_string(pd.size()) + ")");
  }
  for (std::size_t i = 0; i < povms.size(); ++i) {
    if (povms[i].dim() != pd[i]) list[i].fail("POVM dimension does not match its party factor");
  }
  const Node cn = n.at("channel");
  ChannelSpec channel = parse_channel(cn, tol);
  if (channel.in_dims.size() != pd.size() + 1 || channel.out_dims.size() != pd.size() + 1) {
    cn.fail("channel must act on every party factor and one trusted factor");
  }
  for (std::size_t i = 0; i < pd.size(); ++i) {
    if (channel.in_dims[i] != pd[i] || channel.out_dims[i] != pd[i]) {
      cn.fail("channel factor " + std::to_string(i) + " does not match the party state");
    }
  }
  std::optional<KeyProbe> key;
  if (n.has("key")) {
    const Node kn = n.at("key");
    kn.expect_object({"input", "measurement"});
    State input = parse_state(kn.at("input"), tol);
    Povm measurement = parse_povm(kn.at("measurement"), tol);
    if (input.op().side() != channel.in_dims.back()) {
      kn.at("input").fail("key input does not match the trusted input dimension");
    }
    if (measurement.dim() != channel.out_dims.back()) {
      kn.at("measurement").fail("key measurement does not match the trusted output dimension");
    }
    key = KeyProbe{std::move(input), std::move(measurement)};
  }
  return RealizationSpec{std::move(party), std::move(povms), std::move(channel), std::move(key)};
}

json dims_to_json(const Dims& d) { return d.size() == 1 ? json(d.front()) : json(d); }

json state_to_json(const State& s) {
  return {{"dims", s.dims()}, {"matrix", matrix_to_json(s.op().data())}};
}

json povm_to_json(const Povm& p) {
  json effects = json::array();
  for (const auto& row : p.effects()) {
    json r = json::array();
    for (const Op& e : row) r.push_back(matrix_to_json(e.data()));
    effects.push_back(std::move(r));
  }
  return {{"dims", p.effects().front().front().dims()}, {"effects", std::move(effects)}};
}

json channel_to_json(const ChannelSpec& c) {
  json j{{"in_dim", dims_to_json(c.in_dims)}, {"out_dim", dims_to_json(c.out_dims)}};
  if (c.kraus) {
    json list = json::array();
    for (const CMatrix& k : *c.kraus) list.push_back(matrix_to_json(k));
    j["kraus"] = std::move(list);
  } else {
    j["choi"] = matrix_to_json(c.choi.op().data());
  }
  return j;
}

json scenario_to_json(const Scenario& sc) {
  return {{"settings", sc.settings}, {"outcomes", sc.outcomes}, {"d_c", sc.d_c}, {"d_ct", sc.d_ct}};
}

json members_to_json(const AssemblageSpec& spec, const char* matrix_key) {
  json list = json::array();
  for (std::size_t i = 0; i < spec.members.size(); ++i) {
    if (!spec.members[i]) continue;
    const Position pos = spec.scenario.position(static_cast<int>(i));
    json m{{"a", pos.a}, {"x", pos.x}};
    if (spec.members[i]->pure) {
      m["weight"] = spec.members[i]->pure->weight;
      m["ket"] = vector_to_json(spec.members[i]->pure->ket.data());
    } else {
      m[matrix_key] = matrix_to_json(spec.members[i]->op.data());
    }
    list.push_back(std::move(m));
  }
  return list;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Document document_from_json(const json& j, double tol) {
  const Node root(j, "");
  if (!j.is_object()) root.fail("document must be an object");
  const std::string kind = root.at("kind").as_string();
  const int version = root.at("version").as_int(0);
  if (version != kDocumentVersion) {
    root.at("version").fail("unsupported version " + std::to_string(version));
  }
  const std::string note = root.has("note") ? root.at("note").as_string() : std::string();

  auto simple = [&](std::initializer_list<const char*> extra) {
    std::vector<const char*> keys{"kind", "version", "note"};
    keys.insert(keys.end(), extra.begin(), extra.end());
    for (const auto& [key, unused] : j.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) throw DocumentError("/" + escape_pointer(key), "unknown key");
    }
  };
  // Payload objects for the leaf kinds live at the top level next to kind/version/note.
  auto payload_node = [&](std::initializer_list<const char*> keys) {
    simple(keys);
    json payload = json::object();
    for (const char* k : keys) {
      if (j.contains(k)) payload[k] = j.at(k);
    }
    return payload;
  };

  if (kind == "state") {
    const json p = payload_node({"dims", "matrix", "ket"});
    return Document{version, note, parse_state(Node(p, ""), tol)};
  }
  if (kind == "povm") {
    const json p = payload_node({"dims", "effects", "bases"});
    return Document{version, note, parse_povm(Node(p, ""), tol)};
  }
  if (kind == "channel") {
    const json p = payload_node({"in_dim", "out_dim", "kraus", "choi"});
    return Document{version, note, parse_channel(Node(p, ""), tol)};
  }
  if (kind == "assemblage") return Document{version, note, parse_assemblage(root, tol)};
  if (kind == "channel_assemblage") {
    return Document{version, note, parse_channel_assemblage(root, tol)};
  }
  if (kind == "realization") return Document{version, note, parse_realization(root, tol)};
  root.at("kind").fail("unknown document kind '" + kind + "'");
}

Document parse_document(std::string_view text, double tol) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError("byte " + std::to_string(e.byte), e.what());
  } catch (const json::exception& e) {
    throw DocumentError("/", e.what());
  }
  return document_from_json(j, tol);
}

json document_to_json(const Document& doc) {
  json j = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, State>) {
          return state_to_json(p);
        } else if constexpr (std::is_same_v<T, Povm>) {
          return povm_to_json(p);
        } else if constexpr (std::is_same_v<T, ChannelSpec>) {
          return channel_to_json(p);
        } else if constexpr (std::is_same_v<T, AssemblageSpec>) {
          json out{{"scenario", scenario_to_json(p.scenario)}, {"member_dims", p.member_dims}};
          out["members"] = members_to_json(p, "member");
          return out;
        } else if constexpr (std::is_same_v<T, ChannelAssemblageSpec>) {
          return {{"scenario", scenario_to_json(p.members.scenario)},
                  {"members", members_to_json(p.members, "choi")}};
        } else {
          json out{{"party_state", state_to_json(p.party_state)},
                   {"channel", channel_to_json(p.channel)}};
          json povms = json::array();
          for (const Povm& m : p.povms) povms.push_back(povm_to_json(m));
          out["povms"] = std::move(povms);
          if (p.key) {
            out["key"] = {{"input", state_to_json(p.key->input)},
                          {"measurement", povm_to_json(p.key->measurement)}};
          }
          return out;
        }
      },
      doc.payload);
  j["kind"] = to_string(doc.kind());
  j["version"] = doc.version;
  if (!doc.note.empty()) j["note"] = doc.note;
  return j;
}

std::string serialize_document(const Document& doc) { return document_to_json(doc).dump(); }

ChannelAssemblage channel_assemblage_of(const Document& doc, double tol) {
  if (const auto* c = std::get_if<ChannelAssemblageSpec>(&doc.payload)) {
    return c->to_channel_assemblage(tol);
  }
  if (const auto* r = std::get_if<RealizationSpec>(&doc.payload)) {
    return chanasm_from_realization(r->party_state, r->povms, r->channel.choi, tol);
  }
  throw InputError(std::string("expected a channel_assemblage or realization document, got ") +
                   to_string(doc.kind()));
}

const json& document_schema() {
  static const json schema = json::parse(bundled_resource("document.schema.json").value());
  return schema;
}

}  // namespace chanasm
