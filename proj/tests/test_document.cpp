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


#include <string>

#include <gtest/gtest.h>

#include "chanasm/commands.hpp"
#include "chanasm/document.hpp"
#include "chanasm/resources.hpp"

namespace chanasm {
namespace {

std::string fixture_text(const char* name) { return std::string(*bundled_resource(name)); }

// Parse expecting a DocumentError; returns its location.
std::string error_location(const std::string& text) {
  try {
    parse_document(text);
  } catch (const DocumentError& e) {
    return e.location();
  }
  ADD_FAILURE() << "document was accepted: " << text;
  return "";
}

const std::string kQubitState =
    R"({"kind":"state","version":1,"dims":[2],"matrix":[[0.5,0],[0,0.5]]})";

TEST(Document, BundledFixtureKinds) {
  EXPECT_EQ(parse_document(fixture_text("example1.json")).kind(), DocumentKind::kRealization);
  EXPECT_EQ(parse_document(fixture_text("appendix.json")).kind(), DocumentKind::kRealization);
  EXPECT_EQ(parse_document(fixture_text("example1_expected.json")).kind(),
            DocumentKind::kChannelAssemblage);
  EXPECT_EQ(parse_document(fixture_text("local_example.json")).kind(),
            DocumentKind::kChannelAssemblage);
}

TEST(Document, EveryFixtureRoundTrips) {
  int count = 0;
  for (std::string_view name : bundled_resource_names()) {
    if (name == "document.schema.json") continue;
    const Document first = parse_document(*bundled_resource(name));
    const std::string once = serialize_document(first);
    const Document second = parse_document(once);
    EXPECT_EQ(second.kind(), first.kind()) << name;
    EXPECT_EQ(serialize_document(second), once) << name;
    ++count;
  }
  EXPECT_GE(count, 7);
}

TEST(Document, LeafKindsRoundTrip) {
  const std::string povm =
      R"({"kind":"povm","version":1,"dims":[2],"effects":[[[[1,0],[0,0]],[[0,0],[0,1]]]]})";
  const std::string channel =
      R"({"kind":"channel","version":1,"in_dim":2,"out_dim":2,"kraus":[[[0,1],[1,0]]]})";
  for (const std::string& text : {kQubitState, povm, channel}) {
    const std::string once = serialize_document(parse_document(text));
    EXPECT_EQ(serialize_document(parse_document(once)), once);
  }
  EXPECT_EQ(parse_document(povm).kind(), DocumentKind::kPovm);
  EXPECT_EQ(parse_document(channel).kind(), DocumentKind::kChannel);
}

TEST(Document, ComplexNumbersAcceptBothForms) {
  const Document a = parse_document(
      R"({"kind":"state","version":1,"dims":[2],"matrix":[[0.5,[0,-0.5]],[[0,0.5],0.5]]})");
  const State& s = std::get<State>(a.payload);
  EXPECT_EQ(s.op().data()(0, 1), Complex(0, -0.5));
  EXPECT_EQ(s.op().data()(1, 0), Complex(0, 0.5));
}

TEST(Document, TruncatedInputReportsByteOffset) {
  const std::string text = fixture_text("example1.json");
  const std::string location = error_location(text.substr(0, text.size() / 2));
  EXPECT_EQ(location.rfind("byte ", 0), 0u) << location;
}

TEST(Document, NonFiniteEntriesRejected) {
  EXPECT_FALSE(error_location(
      R"({"kind":"state","version":1,"dims":[2],"matrix":[[1e999,0],[0,0]]})").empty());
  EXPECT_FALSE(error_location(
      R"({"kind":"state","version":1,"dims":[2],"matrix":[[NaN,0],[0,0]]})").empty());
}

TEST(Document, SchemaErrorsArePathAddressed) {
  EXPECT_EQ(error_location(R"({"kind":"state","version":1,"dims":[2],"matrix":[[1,0],[0,0]],"bogus":1})"),
            "/bogus");
  EXPECT_EQ(error_location(R"({"kind":"state","version":1,"dims":[2],"matrix":[[1,0,0],[0,0]]})"),
            "/matrix/0");
  EXPECT_EQ(error_location(R"({"kind":"state","version":2,"dims":[2],"matrix":[[1,0],[0,0]]})"),
            "/version");
  EXPECT_EQ(error_location(R"({"kind":"tensor","version":1})"), "/kind");
  EXPECT_EQ(error_location(R"({"version":1})"), "/");
  EXPECT_EQ(error_location(R"([1,2])"), "/");
}

TEST(Document, PhysicalViolationsRejected) {
  // trace 2
  EXPECT_EQ(error_location(R"({"kind":"state","version":1,"dims":[2],"matrix":[[1,0],[0,1]]})"), "/");
  // not trace preserving
  const std::string location = error_location(
      R"({"kind":"channel","version":1,"in_dim":2,"out_dim":2,"kraus":[[[0.5,0],[0,0.5]]]})");
  EXPECT_EQ(location, "/");
  // effects do not sum to identity
  EXPECT_FALSE(
      error_location(R"({"kind":"povm","version":1,"dims":[2],"effects":[[[[1,0],[0,0]]]]})")
          .empty());
}

TEST(Document, ChoiChannelMayBeNonTracePreserving) {
  const Document d = parse_document(
      R"({"kind":"channel","version":1,"in_dim":2,"out_dim":2,
          "choi":[[0.25,0,0,0.25],[0,0,0,0],[0,0,0,0],[0.25,0,0,0.25]]})");
  const auto& spec = std::get<ChannelSpec>(d.payload);
  EXPECT_FALSE(spec.kraus.has_value());
  EXPECT_FALSE(verify_cptp(spec.choi, 1e-9).tp);
}

TEST(Document, AssemblageMembersAndDefaults) {
  const std::string text = R"({
    "kind": "assemblage", "version": 1,
    "scenario": {"settings": [1], "outcomes": [2], "d_c": 2}, "member_dims": [2],
    "members": [
      {"a": [0], "x": [0], "member": [[0.5, 0], [0, 0]]},
      {"a": [1], "x": [0], "ket": [0, 1], "weight": 0.5}
    ]})";
  const Document d = parse_document(text);
  const auto& spec = std::get<AssemblageSpec>(d.payload);
  ASSERT_EQ(spec.members.size(), 2u);
  ASSERT_TRUE(spec.members[1]->pure.has_value());
  EXPECT_DOUBLE_EQ(spec.members[1]->pure->weight, 0.5);
  EXPECT_TRUE(verify_ns(spec.to_assemblage(), 1e-9).pass);

  const std::string sparse = R"({
    "kind": "assemblage", "version": 1,
    "scenario": {"settings": [1], "outcomes": [2], "d_c": 2}, "member_dims": [2],
    "members": [{"a": [0], "x": [0], "member": [[0.5, 0], [0, 0.5]]}]})";
  const Assemblage s = std::get<AssemblageSpec>(parse_document(sparse).payload).to_assemblage();
  EXPECT_EQ(s.member(1).data(), CMatrix::Zero(2, 2));
}

TEST(Document, DuplicateAndMalformedMembers) {
  const std::string dup = R"({
    "kind": "assemblage", "version": 1,
    "scenario": {"settings": [1], "outcomes": [2], "d_c": 2}, "member_dims": [2],
    "members": [
      {"a": [0], "x": [0], "member": [[0.5, 0], [0, 0]]},
      {"a": [0], "x": [0], "member": [[0, 0], [0, 0.5]]}
    ]})";
  EXPECT_EQ(error_location(dup), "/members/1");
  const std::string both = R"({
    "kind": "assemblage", "version": 1,
    "scenario": {"settings": [1], "outcomes": [2], "d_c": 2}, "member_dims": [2],
    "members": [{"a": [0], "x": [0], "member": [[1, 0], [0, 0]], "ket": [1, 0]}]})";
  EXPECT_EQ(error_location(both), "/members/0");
  const std::string unnormalized = R"({
    "kind": "assemblage", "version": 1,
    "scenario": {"settings": [1], "outcomes": [2], "d_c": 2}, "member_dims": [2],
    "members": [{"a": [0], "x": [0], "ket": [1, 1], "weight": 1}]})";
  EXPECT_EQ(error_location(unnormalized), "/members/0/ket");
  const std::string out_of_range = R"({
    "kind": "assemblage", "version": 1,
    "scenario": {"settings": [1], "outcomes": [2], "d_c": 2}, "member_dims": [2],
    "members": [{"a": [2], "x": [0], "member": [[1, 0], [0, 0]]}]})";
  EXPECT_FALSE(error_location(out_of_range).empty());
}

TEST(Document, RealizationDimensionsCrossChecked) {
  nlohmann::json j = nlohmann::json::parse(fixture_text("example1.json"));
  j["povms"].erase(1);
  EXPECT_EQ(error_location(j.dump()), "/povms");
}

TEST(Document, ChannelAssemblageOfRealization) {
  const Document doc = parse_document(fixture_text("example1.json"));
  const ChannelAssemblage l = channel_assemblage_of(doc, 1e-9);
  EXPECT_EQ(l.scenario().positions(), 16);
  const Document state = parse_document(kQubitState);
  EXPECT_THROW(channel_assemblage_of(state, 1e-9), InputError);
}

TEST(Document, SchemaCoversEveryKind) {
  const nlohmann::json& schema = document_schema();
  EXPECT_TRUE(schema.contains("$schema"));
  const std::string text = schema.dump();
  for (const char* kind : {"state", "povm", "channel", "assemblage", "channel_assemblage",
                           "realization"}) {
    EXPECT_NE(text.find(std::string("\"") + kind + "\""), std::string::npos) << kind;
  }
}

}  // namespace
}  // namespace chanasm
