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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chanasm/chanasm.h"

namespace {

constexpr int kInputErrorExit = CHANASM_INPUT_ERROR;

struct StringDeleter {
  void operator()(char* s) const { chanasm_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ReportDeleter {
  void operator()(chanasm_report* r) const { chanasm_report_free(r); }
};
using ReportPtr = std::unique_ptr<chanasm_report, ReportDeleter>;

std::optional<std::string> read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

struct Settings {
  chanasm_options options{};
  std::string output = "json";
  std::string mode;
  std::string file;
  std::string target;
  std::string artifact_path;
  bool timing = false;
};

int emit(chanasm_report* raw, const Settings& s) {
  ReportPtr report(raw);
  char* body = nullptr;
  const chanasm_error rc = s.output == "text" ? chanasm_report_text(report.get(), &body)
                                              : chanasm_report_json(report.get(), &body);
  if (rc != CHANASM_OK) {
    std::cerr << "error: " << chanasm_last_error() << "\n";
    return kInputErrorExit;
  }
  CString text(body);
  std::fputs(text.get(), stdout);
  if (!s.artifact_path.empty()) {
    char* art = nullptr;
    if (chanasm_report_artifact(report.get(), &art) == CHANASM_OK) {
      CString artifact(art);
      if (!write_file(s.artifact_path, artifact.get())) {
        std::cerr << "error: cannot write " << s.artifact_path << "\n";
        return kInputErrorExit;
      }
    } else {
      std::cerr << "note: no artifact produced\n";
    }
  }
  return static_cast<int>(chanasm_report_outcome(report.get()));
}

using DocumentCommand = chanasm_error (*)(const char*, size_t, const chanasm_options*,
                                          chanasm_report**);

int run_document(DocumentCommand command, Settings& s) {
  const auto text = read_input(s.file);
  if (!text) {
    std::cerr << "error: cannot read " << s.file << "\n";
    return kInputErrorExit;
  }
  s.options.mode = s.mode.empty() ? nullptr : s.mode.c_str();
  chanasm_report* report = nullptr;
  if (command(text->data(), text->size(), &s.options, &report) != CHANASM_OK) {
    std::cerr << "error: " << chanasm_last_error() << "\n";
    return kInputErrorExit;
  }
  return emit(report, s);
}

int print_owned(chanasm_error rc, char* raw) {
  if (rc != CHANASM_OK) {
    std::cerr << "error: " << chanasm_last_error() << "\n";
    return kInputErrorExit;
  }
  CString text(raw);
  std::fputs(text.get(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  chanasm_options_init(&s.options);

  CLI::App app{"Verification and certification of channel assemblages", "chanasm"};
  app.set_version_flag("--version", std::string(chanasm_version()));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--abs-tol", s.options.abs_tol, "Absolute tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--rank-tol", s.options.rank_rel_tol, "Relative rank cutoff")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--nnls-tol", s.options.nnls_residual_tol, "NNLS feasibility residual")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--output", s.output, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_flag("--timing", s.timing, "Print elapsed time to stderr");

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", s.file, "Input document ('-' reads stdin)")->required();
  };

  auto* verify = app.add_subcommand("verify", "Check the constraints of a document");
  add_file(verify);
  verify->add_option("--mode", s.mode, "Constraint family")
      ->check(CLI::IsMember({"ns", "asym", "cptp"}));

  auto* choi = app.add_subcommand("choi", "Choi matrices of a channel or realization");
  add_file(choi);
  choi->add_option("--artifact", s.artifact_path, "Write the derived document here");

  auto* extremality = app.add_subcommand("extremality", "Extremality certificate");
  add_file(extremality);
  extremality->add_option("--mode", s.mode, "Constraint system")
      ->check(CLI::IsMember({"full", "asym"}));
  extremality->add_option("--certificate", s.artifact_path, "Write the certificate here");

  auto* lhs = app.add_subcommand("lhs", "Local hidden state decision");
  add_file(lhs);

  auto* security = app.add_subcommand("security-cert", "Eavesdropper pinning certificate");
  add_file(security);
  security->add_option("--x", s.options.key_x, "Key setting of the first party")
      ->check(CLI::NonNegativeNumber);
  security->add_option("--y", s.options.key_y, "Key setting of the second party")
      ->check(CLI::NonNegativeNumber);
  security->add_option("--certificate", s.artifact_path, "Write the certificate here");

  auto* reproduce = app.add_subcommand("reproduce", "Recompute a bundled reference result");
  reproduce->add_option("target", s.target, "Target")
      ->required()
      ->check(CLI::IsMember({"example1", "asym-nonextremal", "appendix", "key"}));

  app.add_subcommand("schema", "Print the document JSON schema");

  auto* fixtures = app.add_subcommand("fixtures", "List or print bundled fixtures");
  fixtures->add_option("name", s.target, "Fixture to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputErrorExit;
  }

  const auto start = std::chrono::steady_clock::now();
  int rc = kInputErrorExit;
  if (*verify) {
    rc = run_document(chanasm_verify, s);
  } else if (*choi) {
    rc = run_document(chanasm_choi, s);
  } else if (*extremality) {
    rc = run_document(chanasm_extremality, s);
  } else if (*lhs) {
    rc = run_document(chanasm_lhs, s);
  } else if (*security) {
    rc = run_document(chanasm_security_cert, s);
  } else if (*reproduce) {
    chanasm_report* report = nullptr;
    if (chanasm_reproduce(s.target.c_str(), &s.options, &report) != CHANASM_OK) {
      std::cerr << "error: " << chanasm_last_error() << "\n";
    } else {
      rc = emit(report, s);
    }
  } else if (app.got_subcommand("schema")) {
    char* out = nullptr;
    const chanasm_error status = chanasm_schema(&out);
    rc = print_owned(status, out);
  } else if (*fixtures) {
    char* out = nullptr;
    const chanasm_error status = s.target.empty() ? chanasm_fixture_names(&out)
                                                  : chanasm_fixture(s.target.c_str(), &out);
    rc = print_owned(status, out);
  }
  if (s.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    std::cerr << "elapsed_ms " << ms.count() << "\n";
  }
  return rc;
}
