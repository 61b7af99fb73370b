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

#include <nlohmann/json.hpp>

#include "chanasm/certify.hpp"
#include "chanasm/document.hpp"
#include "chanasm/security.hpp"

namespace chanasm {

/// Numeric values double as process exit codes.
enum class Status { kPass = 0, kFail = 1, kInconclusive = 2, kInputError = 3 };

const char* to_string(Status status);

struct Report {
  std::string command;
  Status status = Status::kPass;
  nlohmann::json details = nlohmann::json::object();
  Tolerances tolerances;
  /// Secondary output such as a certificate or a derived document.
  std::optional<nlohmann::json> artifact;

  nlohmann::json to_json() const;
  /// Canonical JSON: sorted keys, compact, newline-terminated.
  std::string json_text() const;
  /// One "path = value" line per scalar finding.
  std::string text() const;
};

struct CommandOptions {
  Tolerances tol;
  /// verify: ns | asym | cptp. extremality: full | asym. Empty picks the default.
  std::string mode;
  int key_x = 0;
  int key_y = 0;
};

Report cmd_verify(std::string_view document, const CommandOptions& options);
Report cmd_choi(std::string_view document, const CommandOptions& options);
Report cmd_extremality(std::string_view document, const CommandOptions& options);
Report cmd_lhs(std::string_view document, const CommandOptions& options);
Report cmd_security_cert(std::string_view document, const CommandOptions& options);
/// target: example1 | asym-nonextremal | appendix | key.
Report cmd_reproduce(std::string_view target, const CommandOptions& options);
Report cmd_schema(const CommandOptions& options);

nlohmann::json certificate_to_json(const ExtremalityCertificate& cert);

/// Distance of q / |q| from the row space of a (relative rank cutoff rel).
double row_space_residual(const RMatrix& a, const RVector& q, double rel);

/// Rows of the constraint system restricted to column scalings: variable k
/// multiplies every coefficient in group k, c_i = reference_i * s_{group_i}.
/// Only rows with zero right-hand side are kept.
RMatrix grouped_homogeneous_rows(const LinearSystem& sys, const std::vector<int>& group_of_column,
                                 int groups);

/// Parsed bundled fixture.
Document bundled_document(std::string_view name, double tol = Tolerances{}.abs_tol);

}  // namespace chanasm
