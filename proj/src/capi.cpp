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

#include "chanasm/chanasm.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "chanasm/commands.hpp"
#include "chanasm/resources.hpp"

struct chanasm_document {
  chanasm::Document doc;
};

struct chanasm_report {
  chanasm::Report report;
};

namespace {

thread_local std::string last_error;

chanasm_error fail(chanasm_error code, std::string message) {
  last_error = std::move(message);
  return code;
}

chanasm_error ok() {
  last_error.clear();
  return CHANASM_OK;
}

chanasm_error copy_out(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (buf == nullptr) return fail(CHANASM_ERR_INTERNAL, "out of memory");
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  *out = buf;
  return ok();
}

chanasm::CommandOptions convert(const chanasm_options* options) {
  chanasm::CommandOptions o;
  if (options != nullptr) {
    o.tol.abs_tol = options->abs_tol;
    o.tol.rank_rel_tol = options->rank_rel_tol;
    o.tol.nnls_residual_tol = options->nnls_residual_tol;
    if (options->mode != nullptr) o.mode = options->mode;
    o.key_x = options->key_x;
    o.key_y = options->key_y;
  }
  return o;
}

template <typename F>
chanasm_error guarded(F&& f) {
  try {
    return f();
  } catch (const std::bad_alloc&) {
    return fail(CHANASM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CHANASM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CHANASM_ERR_INTERNAL, "unknown error");
  }
}

template <typename Command>
chanasm_error run_document_command(const char* text, size_t length, const chanasm_options* options,
                                   chanasm_report** out, Command command) {
  if (text == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new chanasm_report{command(std::string_view(text, length), convert(options))};
    return ok();
  });
}

}  // namespace

extern "C" {

const char* chanasm_version(void) { return "1.0.0"; }

void chanasm_options_init(chanasm_options* options) {
  if (options == nullptr) return;
  const chanasm::Tolerances defaults;
  options->abs_tol = defaults.abs_tol;
  options->rank_rel_tol = defaults.rank_rel_tol;
  options->nnls_residual_tol = defaults.nnls_residual_tol;
  options->mode = nullptr;
  options->key_x = 0;
  options->key_y = 0;
}

const char* chanasm_last_error(void) { return last_error.c_str(); }

void chanasm_string_free(char* s) { std::free(s); }

chanasm_error chanasm_document_parse(const char* text, size_t length,
                                     const chanasm_options* options, chanasm_document** out) {
  if (text == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      const double tol = convert(options).tol.abs_tol;
      *out = new chanasm_document{chanasm::parse_document(std::string_view(text, length), tol)};
      return ok();
    } catch (const std::invalid_argument& e) {
      *out = nullptr;
      return fail(CHANASM_ERR_PARSE, e.what());
    }
  });
}

chanasm_error chanasm_document_serialize(const chanasm_document* doc, char** out) {
  if (doc == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(chanasm::serialize_document(doc->doc), out); });
}

const char* chanasm_document_kind(const chanasm_document* doc) {
  return doc == nullptr ? nullptr : chanasm::to_string(doc->doc.kind());
}

void chanasm_document_free(chanasm_document* doc) { delete doc; }

chanasm_error chanasm_verify(const char* text, size_t length, const chanasm_options* options,
                             chanasm_report** out) {
  return run_document_command(text, length, options, out, chanasm::cmd_verify);
}

chanasm_error chanasm_choi(const char* text, size_t length, const chanasm_options* options,
                           chanasm_report** out) {
  return run_document_command(text, length, options, out, chanasm::cmd_choi);
}

chanasm_error chanasm_extremality(const char* text, size_t length, const chanasm_options* options,
                                  chanasm_report** out) {
  return run_document_command(text, length, options, out, chanasm::cmd_extremality);
}

chanasm_error chanasm_lhs(const char* text, size_t length, const chanasm_options* options,
                          chanasm_report** out) {
  return run_document_command(text, length, options, out, chanasm::cmd_lhs);
}

chanasm_error chanasm_security_cert(const char* text, size_t length,
                                    const chanasm_options* options, chanasm_report** out) {
  return run_document_command(text, length, options, out, chanasm::cmd_security_cert);
}

chanasm_error chanasm_reproduce(const char* target, const chanasm_options* options,
                                chanasm_report** out) {
  if (target == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new chanasm_report{chanasm::cmd_reproduce(target, convert(options))};
    return ok();
  });
}

chanasm_error chanasm_schema(char** out) {
  if (out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(chanasm::document_schema().dump(2) + "\n", out); });
}

chanasm_error chanasm_fixture_names(char** out) {
  if (out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::string names;
    for (std::string_view name : chanasm::bundled_resource_names()) {
      if (name.size() > 5 && name.substr(name.size() - 5) == ".json" &&
          name != "document.schema.json") {
        names.append(name).push_back('\n');
      }
    }
    return copy_out(names, out);
  });
}

chanasm_error chanasm_fixture(const char* name, char** out) {
  if (name == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto text = chanasm::bundled_resource(name);
    if (!text) return fail(CHANASM_ERR_INVALID_ARGUMENT, std::string("no fixture named ") + name);
    return copy_out(std::string(*text), out);
  });
}

chanasm_outcome chanasm_report_outcome(const chanasm_report* report) {
  if (report == nullptr) return CHANASM_INPUT_ERROR;
  return static_cast<chanasm_outcome>(report->report.status);
}

chanasm_error chanasm_report_json(const chanasm_report* report, char** out) {
  if (report == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(report->report.json_text(), out); });
}

chanasm_error chanasm_report_text(const chanasm_report* report, char** out) {
  if (report == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(report->report.text(), out); });
}

chanasm_error chanasm_report_artifact(const chanasm_report* report, char** out) {
  if (report == nullptr || out == nullptr) return fail(CHANASM_ERR_NULL_ARGUMENT, "null argument");
  if (!report->report.artifact) {
    *out = nullptr;
    return fail(CHANASM_ERR_NOT_AVAILABLE, "report has no artifact");
  }
  return guarded([&] { return copy_out(report->report.artifact->dump(2) + "\n", out); });
}

void chanasm_report_free(chanasm_report* report) { delete report; }

}  // extern "C"
