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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "chanasm/channel_assemblage.hpp"

namespace chanasm {

inline constexpr int kDocumentVersion = 1;

enum class DocumentKind { kState, kPovm, kChannel, kAssemblage, kChannelAssemblage, kRealization };

const char* to_string(DocumentKind kind);

/// Schema violation or malformed input. `location` is a JSON pointer for
/// schema errors and "byte N" for syntax errors.
class DocumentError : public InputError {
 public:
  DocumentError(std::string location, const std::string& message);
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

struct ChannelSpec {
  Dims in_dims;
  Dims out_dims;
  /// Present when the channel was given by Kraus operators.
  std::optional<std::vector<CMatrix>> kraus;
  ChoiOp choi;
};

/// A member given either as a matrix or as weight * |ket><ket|.
struct MemberSpec {
  Op op;
  std::optional<PureMember> pure;
};

struct AssemblageSpec {
  Scenario scenario;
  Dims member_dims;
  /// One slot per flat position; missing positions are zero.
  std::vector<std::optional<MemberSpec>> members;

  Assemblage to_assemblage() const;
};

struct KeyProbe {
  State input;
  Povm measurement;
};

struct RealizationSpec {
  State party_state;
  std::vector<Povm> povms;
  ChannelSpec channel;
  std::optional<KeyProbe> key;
};

struct ChannelAssemblageSpec {
  AssemblageSpec members;

  ChannelAssemblage to_channel_assemblage(double tol) const;
};

using Payload = std::variant<State, Povm, ChannelSpec, AssemblageSpec, ChannelAssemblageSpec,
                             RealizationSpec>;

struct Document {
  int version = kDocumentVersion;
  std::string note;
  Payload payload;

  DocumentKind kind() const;
};

Document parse_document(std::string_view text, double tol = Tolerances{}.abs_tol);
Document document_from_json(const nlohmann::json& j, double tol = Tolerances{}.abs_tol);

nlohmann::json document_to_json(const Document& doc);
/// Canonical form: sorted keys, no insignificant whitespace.
std::string serialize_document(const Document& doc);

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const CMatrix& m);
nlohmann::json vector_to_json(const CVector& v);

/// Channel assemblage for a channel_assemblage or realization document.
ChannelAssemblage channel_assemblage_of(const Document& doc, double tol);

/// JSON Schema describing every document kind.
const nlohmann::json& document_schema();

}  // namespace chanasm
